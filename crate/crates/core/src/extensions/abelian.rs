use std::collections::BTreeSet;

use super::cohomology::h2;
use super::record::{extension_from_cocycle, ExtensionRecord};
use crate::error::{Error, Result};
use crate::ffalg::{intertwiner_space, Elem, FqField, Matrix};
use crate::groups::{GroupRef, Presentation};
use crate::modrep::{simple_modules, GModule};

/// Largest `|H²|` whose classes are enumerated.
pub const CLASS_ENUMERATION_LIMIT: u128 = 1 << 20;

/// The extension classes carried by one simple module.
#[derive(Clone, Debug)]
pub struct ModuleClasses {
    pub module: GModule,
    pub endo_degree: usize,
    pub h2_dim: usize,
    /// `|H²(G,V)|`.
    pub h2_order: u128,
    /// `H²` coordinates of one class per `Aut_G(V)`-orbit.
    pub orbit_representatives: Vec<Vec<Elem>>,
}

/// Minimal extensions of `G` by `F_p^k`, one per isomorphism class.
#[derive(Clone, Debug)]
pub struct AbelianExtensions {
    pub base: GroupRef,
    pub p: u32,
    pub k: usize,
    pub modules: Vec<ModuleClasses>,
    pub records: Vec<ExtensionRecord>,
}

impl AbelianExtensions {
    pub fn count(&self) -> usize {
        self.modules.iter().map(|m| m.orbit_representatives.len()).sum()
    }

    /// `r_k(G, F_p)`.
    pub fn r_k(&self) -> usize {
        self.modules.len()
    }

    /// `Σ_{V ∈ Irr_k} |H²(G,V)|`.
    pub fn h2_sum(&self) -> u128 {
        self.modules.iter().map(|m| m.h2_order).sum()
    }

    /// `r_k ≤ e^min_{p^k} ≤ Σ |H²(G,V)|`.
    pub fn chain_holds(&self) -> bool {
        self.r_k() <= self.count() && self.count() as u128 <= self.h2_sum()
    }
}

/// Counts orbits without building the extension groups.
pub fn abelian_minimal_extension_classes(g: &GroupRef, p: u32, k: usize) -> Result<AbelianExtensions> {
    let field = FqField::prime(p)?;
    let mut modules = Vec::new();
    for s in simple_modules(g, &field)?.into_iter().filter(|s| s.dim() == k) {
        let space = h2(&s.module)?;
        let order = space.h2_order();
        if order > CLASS_ENUMERATION_LIMIT {
            return Err(Error::bound("|H²| for class enumeration", CLASS_ENUMERATION_LIMIT, order));
        }
        let h = space.h2_dim();
        // Aut_G(V) acts on H² by post-composition; record its matrices on
        // H² coordinates.
        let endo = if s.module.action().is_empty() {
            all_matrices(&field, k)
        } else {
            span_elements(&field, &intertwiner_space(s.module.action(), s.module.action())?)
        };
        let units: Vec<Matrix> = endo.into_iter().filter(Matrix::is_invertible).collect();
        let mut actions: Vec<Matrix> = Vec::new();
        for a in &units {
            let mut cols = Vec::with_capacity(h);
            for kv in &space.complement {
                let moved: Vec<Elem> = kv.chunks(k).flat_map(|blk| a.mul_vec(blk)).collect();
                cols.push(space.class_coordinates(&moved)?);
            }
            if h > 0 {
                actions.push(Matrix::from_columns(&field, h, &cols));
            }
        }
        let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
        let mut reps = Vec::new();
        for code in 0..order as usize {
            let mut c = code;
            let v: Vec<Elem> = (0..h)
                .map(|_| {
                    let x = (c % p as usize) as Elem;
                    c /= p as usize;
                    x
                })
                .collect();
            if seen.contains(&v) {
                continue;
            }
            for a in &actions {
                seen.insert(a.mul_vec(&v));
            }
            seen.insert(v.clone());
            reps.push(v);
        }
        modules.push(ModuleClasses {
            module: s.module,
            endo_degree: s.endo_degree,
            h2_dim: h,
            h2_order: order,
            orbit_representatives: reps,
        });
    }
    Ok(AbelianExtensions {
        base: g.clone(),
        p,
        k,
        modules,
        records: Vec::new(),
    })
}

/// Minimal extensions of `G` with kernel `F_p^k`, one record per
/// isomorphism class.
pub fn abelian_minimal_extensions(g: &GroupRef, p: u32, k: usize) -> Result<AbelianExtensions> {
    let mut out = abelian_minimal_extension_classes(g, p, k)?;
    let mut records = Vec::new();
    for m in &out.modules {
        let space = h2(&m.module)?;
        for rep in &m.orbit_representatives {
            records.push(extension_from_cocycle(&m.module, &space.class_cocycle(rep))?);
        }
    }
    out.records = records;
    Ok(out)
}

fn span_elements(field: &FqField, basis: &[Matrix]) -> Vec<Matrix> {
    let q = field.order() as usize;
    let n = basis[0].rows();
    (0..q.pow(basis.len() as u32))
        .map(|mut code| {
            let mut m = Matrix::zeros(field, n, n);
            for b in basis {
                let c = (code % q) as Elem;
                code /= q;
                m = m.add(&b.scale(c));
            }
            m
        })
        .collect()
}

fn all_matrices(field: &FqField, n: usize) -> Vec<Matrix> {
    let q = field.order() as usize;
    (0..q.pow((n * n) as u32))
        .map(|mut code| {
            Matrix::from_fn(field, n, n, |_, _| {
                let c = (code % q) as Elem;
                code /= q;
                c
            })
        })
        .collect()
}

/// Both sides of `e^min_{p^k}(G) ≤ p^{rk} r_k(G, F_p)` for a presentation
/// with `r` relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentationBound {
    pub relators: usize,
    pub e_min: usize,
    pub r_k: usize,
    pub bound: u128,
}

impl PresentationBound {
    pub fn holds(&self) -> bool {
        self.e_min as u128 <= self.bound
    }
}

/// Verifies that the presentation defines `G` through `images` and
/// evaluates both sides of the bound.
pub fn presentation_bound_check(
    g: &GroupRef,
    pres: &Presentation,
    images: &[usize],
    p: u32,
    k: usize,
) -> Result<PresentationBound> {
    pres.verify_defines(g, images)?;
    let ext = abelian_minimal_extension_classes(g, p, k)?;
    let r = pres.relator_count();
    let bound = (p as u128)
        .checked_pow((r * k) as u32)
        .and_then(|x| x.checked_mul(ext.r_k() as u128))
        .ok_or_else(|| Error::bound("p^(rk) r_k", u128::MAX, u128::MAX))?;
    Ok(PresentationBound {
        relators: r,
        e_min: ext.count(),
        r_k: ext.r_k(),
        bound,
    })
}
