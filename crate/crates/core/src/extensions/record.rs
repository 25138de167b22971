use std::sync::Arc;

use super::cohomology::{h2, is_cocycle, Cocycle, H2_DIM_LIMIT, H2_GROUP_LIMIT};
use crate::error::{Error, Result};
use crate::ffalg::Elem;
use crate::groups::{min_generators, FiniteGroup, GroupHom, GroupRef, MulFn, Subgroup};
use crate::modrep::GModule;

/// Largest extension order searched exhaustively for isomorphisms.
pub const ISO_SEARCH_LIMIT: usize = 500;
/// Largest number of candidate sections tried when searching for a complement.
const COMPLEMENT_SEARCH_LIMIT: u128 = 1_000_000;

/// Shape of the kernel of a minimal extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KernelShape {
    /// `F_p^k`.
    Abelian { p: u32, k: u32 },
    /// `S^k` for a nonabelian simple `S`.
    NonAbelian { simple: String, simple_order: usize, k: usize },
    Other,
}

/// A short exact sequence `1 → K → E → G → 1`.
#[derive(Clone, Debug)]
pub struct ExtensionRecord {
    pub base: GroupRef,
    pub total: GroupRef,
    pub proj: GroupHom,
    pub kernel: Subgroup,
    pub degree: usize,
    pub minimal: bool,
    pub abelian: bool,
    pub split: bool,
    pub shape: KernelShape,
}

impl ExtensionRecord {
    /// Verifies that `proj` is onto `base` and that the kernel has the
    /// stated shape.
    pub fn new(base: &GroupRef, proj: GroupHom, shape: KernelShape, minimal: bool, split: bool) -> Result<Self> {
        if !Arc::ptr_eq(proj.codomain(), base) {
            return Err(Error::invalid("projection must land in the base group"));
        }
        if !proj.is_surjective() {
            return Err(Error::invalid("projection is not surjective"));
        }
        let total = proj.domain().clone();
        let kernel = proj.kernel();
        let kg = kernel.generators();
        let abelian = kg.iter().all(|&a| kg.iter().all(|&b| total.mul(a, b) == total.mul(b, a)));
        match &shape {
            KernelShape::Abelian { p, k } => {
                let p = *p as usize;
                if !abelian
                    || kernel.order() != p.pow(*k)
                    || kernel.elements().iter().any(|&x| x != total.identity() && total.element_order(x) != p)
                {
                    return Err(Error::invalid("kernel is not elementary abelian of the stated rank"));
                }
            }
            KernelShape::NonAbelian { simple_order, k, .. } => {
                if abelian || Some(kernel.order()) != simple_order.checked_pow(*k as u32) {
                    return Err(Error::invalid("kernel order does not match S^k"));
                }
            }
            KernelShape::Other => {}
        }
        Ok(ExtensionRecord {
            base: base.clone(),
            total,
            degree: kernel.order(),
            kernel,
            proj,
            minimal,
            abelian,
            split,
            shape,
        })
    }

    pub fn order(&self) -> usize {
        self.total.order()
    }

    /// Checks minimality of the kernel directly.
    pub fn verify_minimal(&self) -> bool {
        crate::groups::is_minimal_normal(&self.kernel)
    }

    /// A preimage of every base element.
    pub fn section(&self) -> Vec<usize> {
        let mut s = vec![usize::MAX; self.base.order()];
        for x in self.total.elements() {
            let g = self.proj.apply(x);
            if s[g] == usize::MAX {
                s[g] = x;
            }
        }
        s
    }
}

/// Fixed-width base-`q` codes of vectors in `F_q^m`.
#[derive(Clone, Debug)]
pub(crate) struct VecCodec {
    pub q: usize,
    pub dim: usize,
}

impl VecCodec {
    pub fn size(&self) -> usize {
        self.q.pow(self.dim as u32)
    }

    pub fn encode(&self, v: &[Elem]) -> usize {
        v.iter().rev().fold(0, |acc, &x| acc * self.q + x as usize)
    }

    pub fn decode(&self, mut c: usize) -> Vec<Elem> {
        (0..self.dim)
            .map(|_| {
                let x = (c % self.q) as Elem;
                c /= self.q;
                x
            })
            .collect()
    }
}

/// The extension with elements `(v, g)` (index `code(v) + |V|·g`) and
/// multiplication `(v1,g1)(v2,g2) = (v1 + g1·v2 + c(g1,g2), g1 g2)`.
pub fn extension_from_cocycle(v: &GModule, c: &Cocycle) -> Result<ExtensionRecord> {
    if !is_cocycle(v, c) {
        return Err(Error::NotCocycle);
    }
    let g = v.group().clone();
    let field = v.field().clone();
    let codec = VecCodec {
        q: field.order() as usize,
        dim: v.dim(),
    };
    let nv = codec.size();
    let order = nv
        .checked_mul(g.order())
        .filter(|&o| o <= crate::groups::MAX_ORDER)
        .ok_or_else(|| Error::bound("extension order", crate::groups::MAX_ORDER as u128, (nv * g.order()) as u128))?;
    let mats = v.element_matrices().to_vec();
    let cvals: Vec<Vec<Elem>> = (0..g.order() * g.order())
        .map(|i| c.get(i / g.order(), i % g.order()).to_vec())
        .collect();
    let (g2, codec2, f2) = (g.clone(), codec.clone(), field.clone());
    let mul: MulFn = Arc::new(move |x, y| {
        let (v1, a) = (codec2.decode(x % nv), x / nv);
        let (v2, b) = (codec2.decode(y % nv), y / nv);
        let moved = mats[a].mul_vec(&v2);
        let cc = &cvals[a * g2.order() + b];
        let w: Vec<Elem> = (0..v1.len()).map(|i| f2.add(f2.add(v1[i], moved[i]), cc[i])).collect();
        codec2.encode(&w) + nv * g2.mul(a, b)
    });
    let id = g.identity();
    let mut gens: Vec<usize> = g.gens().iter().map(|&s| nv * s).collect();
    let p = field.characteristic() as usize;
    for j in 0..v.dim() {
        for t in 0..field.degree() {
            let mut e = vec![0; v.dim()];
            e[j] = p.pow(t) as Elem;
            gens.push(codec.encode(&e) + nv * id);
        }
    }
    let label = format!("{}.{}^{}", g.label(), field.order(), v.dim());
    let total = FiniteGroup::from_fn(label, order, nv * id, gens, mul)?;
    let images: Vec<usize> = total.elements().map(|x| x / nv).collect();
    let proj = GroupHom::from_images(&total, &g, images)?;
    let shape = KernelShape::Abelian {
        p: field.characteristic(),
        k: field.degree() * v.dim() as u32,
    };
    let minimal = crate::modrep::is_irreducible(&v.restrict_scalars()?)?;
    let split = if c.is_zero() {
        true
    } else if g.order() <= H2_GROUP_LIMIT && v.dim() <= H2_DIM_LIMIT {
        let space = h2(v)?;
        space.class_coordinates(&space.hom_of_cocycle(c)?)?.iter().all(|&x| x == 0)
    } else {
        complement_exists(&total, &proj)?
    };
    ExtensionRecord::new(&g, proj, shape, minimal, split)
}

/// Searches for a homomorphic section of `proj`.
pub fn complement_exists(total: &GroupRef, proj: &GroupHom) -> Result<bool> {
    let base = proj.codomain().clone();
    let (_, gens) = min_generators(&base)?;
    let mut fibres: Vec<Vec<usize>> = vec![Vec::new(); base.order()];
    for x in total.elements() {
        fibres[proj.apply(x)].push(x);
    }
    let fibre = fibres[base.identity()].len() as u128;
    let tries = fibre.checked_pow(gens.len() as u32).unwrap_or(u128::MAX);
    if tries > COMPLEMENT_SEARCH_LIMIT {
        return Err(Error::bound("candidate sections", COMPLEMENT_SEARCH_LIMIT, tries));
    }
    let mut choice = vec![0usize; gens.len()];
    loop {
        let images: Vec<usize> = gens.iter().zip(&choice).map(|(&s, &i)| fibres[s][i]).collect();
        if GroupHom::try_extend(&base, &gens, &images, total).is_some() {
            return Ok(true);
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(false);
            }
            choice[i] += 1;
            if choice[i] < fibres[gens[i]].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Outcome of an isomorphism test between extensions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    Isomorphic,
    NotIsomorphic,
    /// Above the search limit with matching certificates.
    Undecided,
}

impl IsoVerdict {
    pub fn is_isomorphic(self) -> bool {
        self == IsoVerdict::Isomorphic
    }
}

fn certificate(e: &ExtensionRecord) -> (usize, usize, bool, Vec<u32>, usize, Vec<u32>) {
    let mut kernel_orders: Vec<u32> = e.kernel.elements().iter().map(|&x| e.total.element_order(x) as u32).collect();
    kernel_orders.sort_unstable();
    (
        e.order(),
        e.degree,
        e.abelian,
        e.total.order_profile(),
        e.total.class_count(),
        kernel_orders,
    )
}

/// Decides whether an isomorphism `f: E1 → E2` with `π2 ∘ f = π1` exists.
pub fn extensions_isomorphic(e1: &ExtensionRecord, e2: &ExtensionRecord) -> Result<IsoVerdict> {
    if !Arc::ptr_eq(&e1.base, &e2.base) {
        return Err(Error::invalid("extensions of different base groups"));
    }
    if certificate(e1) != certificate(e2) {
        return Ok(IsoVerdict::NotIsomorphic);
    }
    if let (Ok(t1), Ok(t2)) = (super::nonabelian::t_map(e1), super::nonabelian::t_map(e2)) {
        if t1.stabilizer.conjugacy_key() != t2.stabilizer.conjugacy_key() {
            return Ok(IsoVerdict::NotIsomorphic);
        }
    }
    if e1.order() > ISO_SEARCH_LIMIT {
        return Ok(IsoVerdict::Undecided);
    }
    let (t1, t2) = (&e1.total, &e2.total);
    let (_, gens) = min_generators(t1)?;
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            t2.elements()
                .filter(|&y| {
                    e2.proj.apply(y) == e1.proj.apply(x)
                        && t2.element_order(y) == t1.element_order(x)
                        && t2.class_size(y) == t1.class_size(x)
                })
                .collect()
        })
        .collect();
    let mut chosen = Vec::with_capacity(gens.len());
    Ok(if search(t1, t2, &gens, &candidates, &mut chosen) {
        IsoVerdict::Isomorphic
    } else {
        IsoVerdict::NotIsomorphic
    })
}

fn search(t1: &GroupRef, t2: &GroupRef, gens: &[usize], cands: &[Vec<usize>], chosen: &mut Vec<usize>) -> bool {
    let i = chosen.len();
    if i == gens.len() {
        return GroupHom::try_extend(t1, gens, chosen, t2).is_some_and(|f| f.is_injective());
    }
    for &y in &cands[i] {
        let consistent = (0..i).all(|j| {
            t2.element_order(t2.mul(chosen[j], y)) == t1.element_order(t1.mul(gens[j], gens[i]))
        });
        if !consistent {
            continue;
        }
        chosen.push(y);
        if search(t1, t2, gens, cands, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}
