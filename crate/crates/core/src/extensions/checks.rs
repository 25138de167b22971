use serde::{Deserialize, Serialize};

use super::abelian::abelian_minimal_extension_classes;
use super::cohomology::Cocycle;
use super::nonabelian::{nonabelian_minimal_extension_count, t_map};
use super::record::{extension_from_cocycle, ExtensionRecord};
use crate::error::{Error, Result};
use crate::ffalg::Elem;
use crate::groups::{direct_product, generates, min_generators, GroupRef, SimpleGroup};
use crate::modrep::{is_irreducible, GModule};

/// `d(E)` against `d(G) + 2`, or `d(G) + 1` for abelian kernels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationBound {
    pub d_base: usize,
    pub d_total: usize,
    pub bound: usize,
}

impl GenerationBound {
    pub fn holds(&self) -> bool {
        self.d_total <= self.bound
    }
}

pub fn generation_bound_check(e: &ExtensionRecord) -> Result<GenerationBound> {
    let (d_base, _) = min_generators(&e.base)?;
    let (d_total, _) = min_generators(&e.total)?;
    Ok(GenerationBound {
        d_base,
        d_total,
        bound: d_base + if e.abelian { 1 } else { 2 },
    })
}

/// `d((V ⋊ G) × H)` with the tuple `((0,g_i,1), (v,1,h_1), (0,1,h_j))`.
#[derive(Clone, Debug)]
pub struct SemidirectGeneration {
    pub d_g: usize,
    pub d_h: usize,
    pub d_total: usize,
    pub v: Vec<Elem>,
    /// The tuple as elements of `(V ⋊ G) × H`.
    pub tuple: Vec<usize>,
    pub tuple_generates: bool,
}

impl SemidirectGeneration {
    pub fn holds(&self) -> bool {
        self.tuple_generates && self.d_total <= self.d_g + self.d_h
    }
}

pub fn semidirect_product_generators_check(v: &GModule, h: &GroupRef) -> Result<SemidirectGeneration> {
    if v.action().iter().all(|a| a.is_identity()) {
        return Err(Error::Precondition("the module must be nontrivial".into()));
    }
    if !is_irreducible(v)? {
        return Err(Error::Precondition("the module must be irreducible".into()));
    }
    if h.is_trivial() {
        return Err(Error::Precondition("the second factor must be nontrivial".into()));
    }
    let g = v.group();
    let vg = extension_from_cocycle(v, &Cocycle::zero(g.order(), v.dim()))?;
    let nv = vg.degree;
    let nh = h.order();
    let total = direct_product(&vg.total, h)?;
    let (d_g, gs) = min_generators(g)?;
    let (d_h, hs) = min_generators(h)?;
    let at = |vcode: usize, x: usize, y: usize| (vcode + nv * x) * nh + y;
    let q = v.field().order() as usize;
    let mut found = None;
    for code in 1..nv {
        let mut tuple: Vec<usize> = gs.iter().map(|&x| at(0, x, h.identity())).collect();
        tuple.push(at(code, g.identity(), hs[0]));
        tuple.extend(hs[1..].iter().map(|&y| at(0, g.identity(), y)));
        if generates(&total, &tuple) {
            found = Some((code, tuple));
            break;
        }
    }
    let (d_total, _) = min_generators(&total)?;
    let (code, tuple, ok) = match found {
        Some((c, t)) => (c, t, true),
        None => (0, Vec::new(), false),
    };
    let mut c = code;
    let vec = (0..v.dim())
        .map(|_| {
            let x = (c % q) as Elem;
            c /= q;
            x
        })
        .collect();
    Ok(SemidirectGeneration {
        d_g,
        d_h,
        d_total,
        v: vec,
        tuple,
        tuple_generates: ok,
    })
}

/// `e_n^min` split by kernel shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalCount {
    pub n: usize,
    pub abelian: usize,
    /// Simple group, exponent and count for each shape `|S|^k = n`.
    pub nonabelian: Vec<(SimpleGroup, usize, usize)>,
}

impl MinimalCount {
    pub fn total(&self) -> usize {
        self.abelian + self.nonabelian.iter().map(|x| x.2).sum::<usize>()
    }
}

fn prime_power(n: usize) -> Option<(u32, usize)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n % d == 0)?;
    let mut m = n;
    let mut k = 0;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p as u32, k))
}

/// Nonabelian shapes are limited to `k ≤ 2` and the simple groups in
/// [`SimpleGroup::ALL`].
pub fn minimal_extension_count(g: &GroupRef, n: usize) -> Result<MinimalCount> {
    let abelian = match prime_power(n) {
        Some((p, k)) => abelian_minimal_extension_classes(g, p, k)?.count(),
        None => 0,
    };
    let mut nonabelian = Vec::new();
    for s in SimpleGroup::ALL {
        for k in 1..=2 {
            if s.order().checked_pow(k as u32) == Some(n) {
                nonabelian.push((s, k, nonabelian_minimal_extension_count(g, s, k)?));
            }
        }
    }
    Ok(MinimalCount { n, abelian, nonabelian })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub total_order: usize,
    pub split: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub t_class: Option<Vec<usize>>,
}

/// Serializable summary of a list of minimal extensions of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionCensus {
    pub base: String,
    pub degree: usize,
    pub kind: String,
    pub count: usize,
    pub records: Vec<CensusRecord>,
}

impl ExtensionCensus {
    pub fn from_records(base: &GroupRef, degree: usize, abelian: bool, records: &[ExtensionRecord]) -> Result<Self> {
        let records = records
            .iter()
            .map(|r| {
                let t_class = if r.abelian { None } else { Some(t_map(r)?.key()) };
                Ok(CensusRecord {
                    total_order: r.order(),
                    split: r.split,
                    t_class,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ExtensionCensus {
            base: base.label().to_string(),
            degree,
            kind: if abelian { "abelian" } else { "nonabelian" }.to_string(),
            count: records.len(),
            records,
        })
    }
}
