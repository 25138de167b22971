use std::cmp::Ordering;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::meataxe::{composition_factors, hom_dimension, is_irreducible_actions};
use super::module::GModule;
use crate::error::{Error, Result};
use crate::ffalg::{Elem, FqField};
use crate::groups::GroupRef;

/// Largest module dimension accepted by [`chop`].
pub const CHOP_DIM_LIMIT: usize = 500;
/// Largest group order for which the regular module is decomposed.
pub const REGULAR_ORDER_LIMIT: usize = 300;

/// A simple module with its endomorphism-field degree.
#[derive(Clone, Debug)]
pub struct SimpleRecord {
    pub module: GModule,
    pub endo_degree: usize,
    pub abs_irred: bool,
    /// Sorted multiset of element traces.
    pub trace_fingerprint: Vec<Elem>,
    /// Trace of each group element.
    pub traces: Vec<Elem>,
}

impl SimpleRecord {
    /// Verifies irreducibility and computes the endomorphism degree.
    pub fn new(module: GModule) -> Result<Self> {
        if module.dim() == 0 || !is_irreducible(&module)? {
            return Err(Error::Precondition("module is not simple".into()));
        }
        Ok(Self::from_simple(module))
    }

    pub(crate) fn from_simple(module: GModule) -> Self {
        let d = module.dim();
        let endo_degree = hom_dimension(module.action(), d, module.action(), d, module.field())
            .expect("matching shapes");
        let traces = module.traces();
        let mut trace_fingerprint = traces.clone();
        trace_fingerprint.sort_unstable();
        SimpleRecord {
            module,
            endo_degree,
            abs_irred: endo_degree == 1,
            trace_fingerprint,
            traces,
        }
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn is_isomorphic(&self, other: &SimpleRecord) -> bool {
        self.dim() == other.dim()
            && Arc::ptr_eq(self.module.group(), other.module.group())
            && self.traces == other.traces
            && hom_dimension(
                self.module.action(),
                self.dim(),
                other.module.action(),
                other.dim(),
                self.module.field(),
            )
            .map_or(false, |d| d > 0)
    }

    fn sort_cmp(&self, other: &SimpleRecord) -> Ordering {
        self.dim()
            .cmp(&other.dim())
            .then_with(|| self.trace_fingerprint.cmp(&other.trace_fingerprint))
            .then_with(|| self.traces.cmp(&other.traces))
    }
}

/// A composition factor with its multiplicity.
#[derive(Clone, Debug)]
pub struct CompositionFactor {
    pub record: SimpleRecord,
    pub multiplicity: usize,
}

pub fn is_irreducible(m: &GModule) -> Result<bool> {
    is_irreducible_actions(m.action(), m.field(), m.dim())
}

/// Composition factors grouped into isomorphism classes, sorted by
/// dimension, trace multiset and trace vector.
pub fn chop(m: &GModule) -> Result<Vec<CompositionFactor>> {
    if m.dim() > CHOP_DIM_LIMIT {
        return Err(Error::bound("module dimension for chop", CHOP_DIM_LIMIT as u128, m.dim() as u128));
    }
    let raw = composition_factors(m.action(), m.field(), m.dim())?;
    let mut classes: Vec<CompositionFactor> = Vec::new();
    for (d, acts) in raw {
        let module = if acts.is_empty() {
            GModule::trivial(m.group(), m.field(), d)
        } else {
            GModule::new_unchecked(m.group(), m.field(), acts)?
        };
        let rec = SimpleRecord::from_simple(module);
        match classes.iter_mut().find(|c| c.record.is_isomorphic(&rec)) {
            Some(c) => c.multiplicity += 1,
            None => classes.push(CompositionFactor {
                record: rec,
                multiplicity: 1,
            }),
        }
    }
    classes.sort_by(|a, b| a.record.sort_cmp(&b.record));
    Ok(classes)
}

/// All simple modules over `field`, one per isomorphism class.
pub fn simple_modules(g: &GroupRef, field: &FqField) -> Result<Vec<SimpleRecord>> {
    if g.order() > REGULAR_ORDER_LIMIT {
        return Err(Error::bound(
            "group order for the simple-module census",
            REGULAR_ORDER_LIMIT as u128,
            g.order() as u128,
        ));
    }
    let reg = GModule::regular(g, field);
    Ok(chop(&reg)?.into_iter().map(|c| c.record).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthRow {
    pub n: usize,
    pub r: u64,
    pub r_star: u64,
}

/// Counts of simple and absolutely simple modules by dimension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrowthTable {
    pub group: String,
    pub p: u32,
    pub e: u32,
    pub rows: Vec<GrowthRow>,
}

impl GrowthTable {
    pub fn from_simples(g: &GroupRef, field: &FqField, simples: &[SimpleRecord], n_max: usize) -> Self {
        let rows = (1..=n_max)
            .map(|n| GrowthRow {
                n,
                r: simples.iter().filter(|s| s.dim() == n).count() as u64,
                r_star: simples.iter().filter(|s| s.dim() == n && s.abs_irred).count() as u64,
            })
            .collect();
        GrowthTable {
            group: g.label().to_string(),
            p: field.characteristic(),
            e: field.degree(),
            rows,
        }
    }

    pub fn r(&self, n: usize) -> u64 {
        self.rows.iter().find(|r| r.n == n).map_or(0, |r| r.r)
    }

    pub fn r_star(&self, n: usize) -> u64 {
        self.rows.iter().find(|r| r.n == n).map_or(0, |r| r.r_star)
    }

    /// `R_n`, the number of simple modules of dimension at most `n`.
    pub fn cumulative(&self, n: usize) -> u64 {
        self.rows.iter().filter(|r| r.n <= n).map(|r| r.r).sum()
    }

    /// Smallest integer `e ≥ 0` with `r_n ≤ p^(e n)` on the tabulated range.
    pub fn exponent_witness(&self) -> u32 {
        let fits = |e: u32, row: &GrowthRow| {
            (self.p as u128)
                .checked_pow(e * row.n as u32)
                .map_or(true, |bound| row.r as u128 <= bound)
        };
        let mut e = 0u32;
        for row in &self.rows {
            while !fits(e, row) {
                e += 1;
            }
        }
        e
    }
}

pub fn r_counts(g: &GroupRef, field: &FqField, n_max: usize) -> Result<GrowthTable> {
    let simples = simple_modules(g, field)?;
    Ok(GrowthTable::from_simples(g, field, &simples, n_max))
}
