use std::sync::Arc;

use super::census::{chop, simple_modules, CompositionFactor, SimpleRecord};
use super::module::GModule;
use crate::error::{Error, Result};
use crate::ffalg::FqField;
use crate::groups::{direct_product, minimal_normal_subgroups, GroupRef, Subgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvolutionRow {
    pub n: usize,
    /// `r*_n(G1 × G2)` from the census of the product.
    pub direct: u64,
    /// `Σ_{n1 n2 = n} r*_{n1}(G1) r*_{n2}(G2)`.
    pub convolution: u64,
}

#[derive(Clone, Debug)]
pub struct ConvolutionCheck {
    pub rows: Vec<ConvolutionRow>,
}

impl ConvolutionCheck {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.direct == r.convolution)
    }
}

fn abs_counts(simples: &[SimpleRecord], n_max: usize) -> Vec<u64> {
    let mut c = vec![0u64; n_max + 1];
    for s in simples.iter().filter(|s| s.abs_irred && s.dim() <= n_max) {
        c[s.dim()] += 1;
    }
    c
}

pub fn product_convolution_check(g1: &GroupRef, g2: &GroupRef, field: &FqField, n_max: usize) -> Result<ConvolutionCheck> {
    let prod = direct_product(g1, g2)?;
    let lhs = abs_counts(&simple_modules(&prod, field)?, n_max);
    let a = abs_counts(&simple_modules(g1, field)?, n_max);
    let b = abs_counts(&simple_modules(g2, field)?, n_max);
    let rows = (1..=n_max)
        .map(|n| ConvolutionRow {
            n,
            direct: lhs[n],
            convolution: (1..=n).filter(|d| n % d == 0).map(|d| a[d] * b[n / d]).sum(),
        })
        .collect();
    Ok(ConvolutionCheck { rows })
}

/// A faithful simple composition factor of a faithful module for a group
/// whose unique minimal normal subgroup is not a `p`-group.
pub fn faithful_irreducible_factor(v: &GModule) -> Result<SimpleRecord> {
    let l = v.group();
    let p = v.field().characteristic();
    let mins = minimal_normal_subgroups(l)?;
    if mins.len() != 1 {
        return Err(Error::NonUniqueMinimalNormal(mins.len()));
    }
    let mut m = mins[0].order();
    while m % p as usize == 0 {
        m /= p as usize;
    }
    if m == 1 {
        return Err(Error::MinimalNormalIsPGroup(p));
    }
    let ker = v.kernel();
    if !ker.is_trivial() {
        return Err(Error::Unfaithful(ker.order()));
    }
    chop(v)?
        .into_iter()
        .map(|c| c.record)
        .find(|r| r.dim() <= v.dim() && r.module.is_faithful())
        .ok_or_else(|| Error::Internal("no faithful composition factor".into()))
}

#[derive(Clone, Debug)]
pub struct RestrictionCheck {
    pub rank: usize,
    /// Factor dimensions and multiplicities of the restricted regular module.
    pub restricted: Vec<(usize, usize)>,
    /// The same for the regular module of the subgroup.
    pub regular: Vec<(usize, usize)>,
    pub holds: bool,
}

/// Compares the composition factors of `F_p[G]` restricted to `H` with
/// `[G:H]` copies of `F_p[H]`.
pub fn restriction_rank_check(h: &Subgroup, p: u32) -> Result<RestrictionCheck> {
    let field = FqField::prime(p)?;
    let g = h.parent();
    let (hg, emb) = h.as_group(format!("H<{}", g.label()))?;
    let res = GModule::regular(g, &field).restrict(&emb)?;
    let reg = GModule::regular(&hg, &field);
    let rank = h.index();
    let fr = chop(&res)?;
    let fh = chop(&reg)?;
    let summary = |f: &[CompositionFactor]| f.iter().map(|c| (c.record.dim(), c.multiplicity)).collect::<Vec<_>>();
    let holds = fr.len() == fh.len()
        && fh.iter().all(|a| {
            fr.iter()
                .any(|b| Arc::ptr_eq(a.record.module.group(), b.record.module.group())
                    && b.record.is_isomorphic(&a.record)
                    && b.multiplicity == rank * a.multiplicity)
        });
    Ok(RestrictionCheck {
        rank,
        restricted: summary(&fr),
        regular: summary(&fh),
        holds,
    })
}
