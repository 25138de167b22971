use std::collections::BTreeMap;
use std::sync::Arc;

use super::record::{complement_exists, ExtensionRecord, KernelShape};
use crate::error::{Error, Result};
use crate::groups::{
    automorphism_group, center, direct_power, direct_product, find_isomorphism, is_simple, min_generators,
    normal_closure, power_coordinates, power_index, semidirect, wreath_with_sym, GroupHom, GroupRef, SimpleGroup,
    Subgroup, Wreath,
};

/// Largest order of an `E_H` construction.
pub const EH_ORDER_LIMIT: usize = 100_000;
/// Largest order of a fiber product built from a coupling.
pub const COUPLING_ORDER_LIMIT: usize = 10_000;
/// Largest number of candidate homomorphisms in a coupling enumeration.
pub const COUPLING_ENUMERATION_LIMIT: u128 = 1_000_000;

fn check_simple(s: &GroupRef) -> Result<()> {
    if s.is_abelian() || !is_simple(s) {
        return Err(Error::NotSimple(s.label().to_string()));
    }
    Ok(())
}

fn shape(s: &GroupRef, k: usize) -> KernelShape {
    KernelShape::NonAbelian {
        simple: s.label().to_string(),
        simple_order: s.order(),
        k,
    }
}

/// `E_H = S^{G/H} ⋊ G`, with `G` permuting the factors as it permutes the
/// left cosets of `H`.
pub fn semidirect_eh(h: &Subgroup, s: &GroupRef) -> Result<ExtensionRecord> {
    check_simple(s)?;
    let g = h.parent().clone();
    let k = h.index();
    let order = (s.order() as u128).checked_pow(k as u32).map(|x| x * g.order() as u128);
    if order.map_or(true, |o| o > EH_ORDER_LIMIT as u128) {
        return Err(Error::bound("order of E_H", EH_ORDER_LIMIT as u128, order.unwrap_or(u128::MAX)));
    }
    let kernel = direct_power(s, k)?;
    let (coset, reps) = h.left_cosets();
    let ns = s.order();
    let actions: Vec<Vec<usize>> = g
        .gens()
        .iter()
        .map(|&x| {
            let sigma: Vec<usize> = reps.iter().map(|&r| coset[g.mul(x, r)]).collect();
            kernel
                .elements()
                .map(|b| {
                    let c = power_coordinates(ns, k, b);
                    let mut moved = vec![0; k];
                    for i in 0..k {
                        moved[sigma[i]] = c[i];
                    }
                    power_index(ns, &moved)
                })
                .collect()
        })
        .collect();
    let sd = semidirect(&kernel, &g, &actions)?;
    let nk = kernel.order();
    let images: Vec<usize> = sd.group.elements().map(|x| x / nk).collect();
    let proj = GroupHom::from_images(&sd.group, &g, images)?;
    let transitive = permutation_orbit(&g, |x, i| coset[g.mul(x, reps[i])], 0).len() == k;
    ExtensionRecord::new(&g, proj, shape(s, k), transitive, true)
}

/// Orbit of a point under the generators of `g`.
fn permutation_orbit(g: &GroupRef, act: impl Fn(usize, usize) -> usize, start: usize) -> Vec<usize> {
    let mut orbit = vec![start];
    let mut i = 0;
    while i < orbit.len() {
        for &x in g.gens() {
            let j = act(x, orbit[i]);
            if !orbit.contains(&j) {
                orbit.push(j);
            }
        }
        i += 1;
    }
    orbit
}

/// The stabilizer class of the permutation action of the base group on the
/// simple factors of the kernel.
#[derive(Clone, Debug)]
pub struct TClass {
    pub stabilizer: Subgroup,
    pub k: usize,
    pub transitive: bool,
}

impl TClass {
    pub fn key(&self) -> Vec<usize> {
        self.stabilizer.conjugacy_key()
    }
}

/// The simple direct factors of a kernel of shape `S^k`.
pub fn kernel_factors(e: &ExtensionRecord) -> Result<Vec<Subgroup>> {
    let KernelShape::NonAbelian { simple_order, k, .. } = e.shape else {
        return Err(Error::Precondition("kernel is not of shape S^k".into()));
    };
    let total = &e.total;
    let kgens = e.kernel.generators();
    let mut factors: Vec<Subgroup> = Vec::new();
    for &x in e.kernel.elements() {
        if factors.len() == k {
            break;
        }
        if x == total.identity() || factors.iter().any(|f| f.contains(x)) {
            continue;
        }
        let n = normal_closure(total, &[x], &kgens);
        if n.order() == simple_order {
            factors.push(n);
        }
    }
    if factors.len() != k {
        return Err(Error::Precondition("kernel is not of shape S^k".into()));
    }
    Ok(factors)
}

/// `t(E)`: the conjugacy class of the stabilizer of a simple factor.
pub fn t_map(e: &ExtensionRecord) -> Result<TClass> {
    let factors = kernel_factors(e)?;
    let k = factors.len();
    let base = &e.base;
    let section = e.section();
    let total = &e.total;
    let probe: Vec<usize> = factors
        .iter()
        .map(|f| f.elements().iter().copied().find(|&x| x != total.identity()).expect("nontrivial factor"))
        .collect();
    let gen_perm: Vec<Vec<usize>> = base
        .gens()
        .iter()
        .map(|&g| {
            let lift = section[g];
            probe
                .iter()
                .map(|&x| {
                    let y = total.conj(x, total.inv(lift));
                    factors.iter().position(|f| f.contains(y)).expect("conjugation permutes the factors")
                })
                .collect()
        })
        .collect();
    // σ_{p s} = σ_p ∘ σ_s along the Schreier tree.
    let tree = base.tree();
    let mut perm: Vec<Vec<usize>> = vec![Vec::new(); base.order()];
    perm[base.identity()] = (0..k).collect();
    for &x in &tree.order[1..] {
        let s = &gen_perm[tree.gen[x]];
        perm[x] = s.iter().map(|&i| perm[tree.parent[x]][i]).collect();
    }
    let stab: Vec<usize> = base.elements().filter(|&x| perm[x][0] == 0).collect();
    let orbit: std::collections::BTreeSet<usize> = base.elements().map(|x| perm[x][0]).collect();
    Ok(TClass {
        stabilizer: Subgroup::from_elements(base, stab)?,
        k,
        transitive: orbit.len() == k,
    })
}

/// A homomorphism `G → Out(S)^k ⋊ Sym(k)`.
#[derive(Clone, Debug)]
pub struct Coupling {
    pub base: GroupRef,
    pub simple: GroupRef,
    pub k: usize,
    pub wreath: Arc<Wreath>,
    pub hom: GroupHom,
    pub transitive: bool,
}

impl Coupling {
    /// Permutation of the `k` factors induced by `g`.
    pub fn factor_permutation(&self, g: usize) -> Vec<usize> {
        self.wreath.split(self.hom.apply(g)).1
    }

    /// Stabilizer in the base of the first factor.
    pub fn stabilizer(&self) -> Subgroup {
        let elems = self.base.elements().filter(|&g| self.factor_permutation(g)[0] == 0).collect();
        Subgroup::from_elements(&self.base, elems).expect("point stabilizer is a subgroup")
    }

    /// For `k = 1`, the element of `Out(S)` attached to `g`.
    pub fn out_element(&self, g: usize) -> usize {
        self.wreath.split(self.hom.apply(g)).0[0]
    }
}

/// All couplings `G → Out(S)^k ⋊ Sym(k)` together with the Out group.
pub fn enumerate_couplings(g: &GroupRef, s: &GroupRef, k: usize) -> Result<Vec<Coupling>> {
    check_simple(s)?;
    let aut = automorphism_group(s)?;
    let wreath = Arc::new(wreath_with_sym(&aut.out, k)?);
    let w = wreath.group().clone();
    let (_, gens) = min_generators(g)?;
    let tries = (w.order() as u128).checked_pow(gens.len() as u32).unwrap_or(u128::MAX);
    if tries > COUPLING_ENUMERATION_LIMIT {
        return Err(Error::bound("candidate couplings", COUPLING_ENUMERATION_LIMIT, tries));
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        if let Some(hom) = GroupHom::try_extend(g, &gens, &choice, &w) {
            let c = Coupling {
                base: g.clone(),
                simple: s.clone(),
                k,
                wreath: wreath.clone(),
                hom,
                transitive: false,
            };
            let orbit = permutation_orbit(g, |x, i| c.factor_permutation(x)[i], 0);
            out.push(Coupling {
                transitive: orbit.len() == k,
                ..c
            });
        }
        let mut i = 0;
        loop {
            if i == choice.len() {
                return Ok(out);
            }
            choice[i] += 1;
            if choice[i] < w.order() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Canonical key of a coupling up to conjugation in the wreath product.
pub fn coupling_class_key(c: &Coupling) -> Vec<usize> {
    let w = c.wreath.group();
    let imgs: Vec<usize> = c.base.gens().iter().map(|&x| c.hom.apply(x)).collect();
    w.elements()
        .map(|y| imgs.iter().map(|&a| w.conj(a, y)).collect::<Vec<_>>())
        .min()
        .unwrap_or_default()
}

/// Transitive couplings up to conjugacy: the non-abelian minimal extensions
/// with kernel `S^k`.
pub fn transitive_coupling_classes(g: &GroupRef, s: &GroupRef, k: usize) -> Result<Vec<Coupling>> {
    let mut classes: BTreeMap<Vec<usize>, Coupling> = BTreeMap::new();
    for c in enumerate_couplings(g, s, k)?.into_iter().filter(|c| c.transitive) {
        classes.entry(coupling_class_key(&c)).or_insert(c);
    }
    Ok(classes.into_values().collect())
}

/// The fiber product `{(a, g) ∈ Aut(S) × G : a·Inn(S) = χ(g)}`.
pub fn extension_from_coupling(chi: &Coupling) -> Result<ExtensionRecord> {
    if chi.k != 1 {
        return Err(Error::Precondition("fiber products are built for k = 1 only".into()));
    }
    let s = &chi.simple;
    if !center(s).is_trivial() {
        return Err(Error::Precondition("simple group has a nontrivial centre".into()));
    }
    let g = &chi.base;
    let aut = automorphism_group(s)?;
    let order = aut.order() * g.order() / aut.out_order();
    if order > COUPLING_ORDER_LIMIT {
        return Err(Error::bound("fiber product order", COUPLING_ORDER_LIMIT as u128, order as u128));
    }
    let prod = direct_product(&aut.group, g)?;
    let ng = g.order();
    let elems: Vec<usize> = prod
        .elements()
        .filter(|&x| aut.to_out.apply(x / ng) == chi.out_element(x % ng))
        .collect();
    let sub = Subgroup::from_elements(&prod, elems)?;
    let label = format!("{}.{}", s.label(), g.label());
    let (e, emb) = sub.as_group(label)?;
    let images: Vec<usize> = e.elements().map(|x| emb.apply(x) % ng).collect();
    let proj = GroupHom::from_images(&e, g, images)?;
    let split = complement_exists(&e, &proj)?;
    ExtensionRecord::new(g, proj, shape(s, 1), true, split)
}

/// The coupling `G → Out(S)` of an extension with kernel `S`.
pub fn coupling_of(e: &ExtensionRecord, s: &GroupRef) -> Result<Coupling> {
    check_simple(s)?;
    let (kg, emb) = e.kernel.as_group("K")?;
    let iso = find_isomorphism(s, &kg).ok_or_else(|| Error::Precondition("kernel is not isomorphic to S".into()))?;
    let inv_iso = iso.inverse().ok_or_else(|| Error::Internal("isomorphism is not invertible".into()))?;
    let to_kernel = |x: usize| e.kernel.elements().binary_search(&x).expect("kernel element");
    let aut = automorphism_group(s)?;
    let wreath = Arc::new(wreath_with_sym(&aut.out, 1)?);
    let w = wreath.group().clone();
    let section = e.section();
    let total = &e.total;
    let base = &e.base;
    let images: Vec<usize> = base
        .gens()
        .iter()
        .map(|&g| {
            let lift = section[g];
            let perm: Vec<u16> = s
                .elements()
                .map(|x| {
                    let y = total.conj(emb.apply(iso.apply(x)), total.inv(lift));
                    inv_iso.apply(to_kernel(y)) as u16
                })
                .collect();
            let a = aut.index_of(&perm).ok_or_else(|| Error::Internal("conjugation is not an automorphism".into()))?;
            let o = aut.to_out.apply(a);
            Ok(wreath.product.element(o, wreath.product.complement.identity()))
        })
        .collect::<Result<_>>()?;
    let hom = GroupHom::extend(base, base.gens(), &images, &w)?;
    Ok(Coupling {
        base: base.clone(),
        simple: s.clone(),
        k: 1,
        wreath,
        hom,
        transitive: true,
    })
}

/// Fibers of the map from transitive coupling classes to stabilizer classes.
#[derive(Clone, Debug)]
pub struct FiberBound {
    pub d: usize,
    pub out_order: usize,
    pub k: usize,
    /// Stabilizer class key and the number of coupling classes over it.
    pub fibers: Vec<(Vec<usize>, usize)>,
    pub bound: u128,
}

impl FiberBound {
    pub fn holds(&self) -> bool {
        self.fibers.iter().all(|&(_, n)| n as u128 <= self.bound)
    }
}

/// Buckets transitive coupling classes by stabilizer class and compares
/// each bucket with `|Out(S)|^{kd}`.
pub fn coupling_fiber_bound_check(g: &GroupRef, s: &GroupRef, k: usize) -> Result<FiberBound> {
    let classes = transitive_coupling_classes(g, s, k)?;
    let (d, _) = min_generators(g)?;
    let out_order = automorphism_group(s)?.out_order();
    let mut fibers: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for c in &classes {
        *fibers.entry(c.stabilizer().conjugacy_key()).or_insert(0) += 1;
    }
    Ok(FiberBound {
        d,
        out_order,
        k,
        fibers: fibers.into_iter().collect(),
        bound: (out_order as u128).pow((k * d) as u32),
    })
}

/// Number of non-abelian minimal extensions of `G` with kernel `S^k`.
pub fn nonabelian_minimal_extension_count(g: &GroupRef, s: SimpleGroup, k: usize) -> Result<usize> {
    Ok(transitive_coupling_classes(g, &s.group()?, k)?.len())
}
