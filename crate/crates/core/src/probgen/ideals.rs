use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use super::lattice::mobius_to_top;
use crate::error::{Error, Result};
use crate::ffalg::{EchelonBasis, Elem, FqField, Matrix};
use crate::groups::GroupRef;
use crate::modrep::meataxe::spin;
use crate::modrep::{simple_modules, GModule};

/// Largest group whose group algebra is censused.
pub const IDEAL_ORDER_LIMIT: usize = 100;
/// Largest module dimension for submodule enumeration.
pub const MODULE_DIM_LIMIT: usize = 12;
/// Largest `|M|` for submodule enumeration.
pub const MODULE_SIZE_LIMIT: u64 = 1 << 20;
/// Largest number of submodules enumerated.
pub const SUBMODULE_LIMIT: usize = 50_000;

/// Maximal left ideals of `F_p[G]` with quotient of dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealRow {
    pub n: usize,
    /// `r_n(G, F_p)`.
    pub r: u64,
    /// `m^⊲_{p^n}`.
    pub ideals: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealCensus {
    pub group: String,
    pub p: u32,
    pub rows: Vec<IdealRow>,
}

impl IdealCensus {
    /// `r_n ≤ m^⊲_{p^n} ≤ p^n r_n` for every row.
    pub fn sandwich_holds(&self) -> bool {
        self.rows.iter().all(|row| {
            let upper = (self.p as u128).pow(row.n as u32) * row.r as u128;
            row.r <= row.ideals && (row.ideals as u128) <= upper
        })
    }
}

/// Reduced row echelon rows of `x ↦ x·v` on `F_p[G]`; equal keys mean
/// equal annihilators.
fn annihilator_key(elements: &[Matrix], field: &FqField, v: &[Elem]) -> Vec<Vec<Elem>> {
    let cols: Vec<Vec<Elem>> = elements.iter().map(|a| a.mul_vec(v)).collect();
    let rref = Matrix::from_columns(field, v.len(), &cols).rref();
    rref.matrix.to_rows().into_iter().take(rref.rank).collect()
}

fn vector(code: u64, q: u64, n: usize) -> Vec<Elem> {
    let mut c = code;
    (0..n)
        .map(|_| {
            let x = (c % q) as Elem;
            c /= q;
            x
        })
        .collect()
}

/// Counts the annihilators `Ann(v)`, `v ≠ 0`, of every simple `F_p[G]`-module
/// of dimension at most `n_max`.
pub fn ideal_census(g: &GroupRef, p: u32, n_max: usize) -> Result<IdealCensus> {
    if g.order() > IDEAL_ORDER_LIMIT {
        return Err(Error::bound("group order for the ideal census", IDEAL_ORDER_LIMIT as u128, g.order() as u128));
    }
    let field = FqField::prime(p)?;
    let simples = simple_modules(g, &field)?;
    let q = p as u64;
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let of_dim: Vec<&GModule> = simples.iter().map(|s| &s.module).filter(|m| m.dim() == n).collect();
        let mut keys: HashSet<Vec<Vec<Elem>>> = HashSet::new();
        if !of_dim.is_empty() {
            let size = q
                .checked_pow(n as u32)
                .filter(|&s| s <= MODULE_SIZE_LIMIT)
                .ok_or_else(|| Error::bound("p^n vectors", MODULE_SIZE_LIMIT, (q as u128).saturating_pow(n as u32)))?;
            for m in &of_dim {
                let elements = m.element_matrices();
                for code in 1..size {
                    keys.insert(annihilator_key(elements, &field, &vector(code, q, n)));
                }
            }
        }
        rows.push(IdealRow {
            n,
            r: of_dim.len() as u64,
            ideals: keys.len() as u64,
        });
    }
    Ok(IdealCensus {
        group: g.label().to_string(),
        p,
        rows,
    })
}

/// All submodules of `M` as reduced echelon bases, the whole module first
/// and then by decreasing dimension.
pub fn submodules(m: &GModule) -> Result<Vec<Vec<Vec<Elem>>>> {
    let dim = m.dim();
    let field = m.field();
    let q = field.order() as u64;
    if dim > MODULE_DIM_LIMIT {
        return Err(Error::bound("module dimension", MODULE_DIM_LIMIT as u128, dim as u128));
    }
    let size = q
        .checked_pow(dim as u32)
        .filter(|&s| s <= MODULE_SIZE_LIMIT)
        .ok_or_else(|| Error::bound("module size", MODULE_SIZE_LIMIT, (q as u128).saturating_pow(dim as u32)))?;
    let canonical = |vectors: &[Vec<Elem>]| -> Vec<Vec<Elem>> {
        if vectors.is_empty() {
            return Vec::new();
        }
        let rref = Matrix::from_rows(field, vectors).expect("rows of equal length").rref();
        rref.matrix.to_rows().into_iter().take(rref.rank).collect()
    };
    let mut cyclic: BTreeSet<Vec<Vec<Elem>>> = BTreeSet::new();
    for code in 1..size {
        let basis = spin(m.action(), field, dim, &[vector(code, q, dim)]);
        cyclic.insert(canonical(basis.vectors()));
    }
    let cyclic: Vec<Vec<Vec<Elem>>> = cyclic.into_iter().collect();
    let mut all: BTreeSet<Vec<Vec<Elem>>> = BTreeSet::new();
    all.insert(Vec::new());
    let mut frontier: Vec<Vec<Vec<Elem>>> = vec![Vec::new()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            let mut basis = EchelonBasis::new(field, dim);
            for v in s {
                basis.insert(v.clone());
            }
            for c in &cyclic {
                if c.iter().all(|v| basis.contains(v)) {
                    continue;
                }
                let joined: Vec<Vec<Elem>> = s.iter().chain(c).cloned().collect();
                let key = canonical(&joined);
                if all.insert(key.clone()) {
                    if all.len() > SUBMODULE_LIMIT {
                        return Err(Error::bound("number of submodules", SUBMODULE_LIMIT as u128, all.len() as u128));
                    }
                    next.push(key);
                }
            }
        }
        frontier = next;
    }
    let mut out: Vec<Vec<Vec<Elem>>> = all.into_iter().collect();
    out.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    Ok(out)
}

fn contained(field: &FqField, dim: usize, a: &[Vec<Elem>], b: &[Vec<Elem>]) -> bool {
    let mut basis = EchelonBasis::new(field, dim);
    for v in b {
        basis.insert(v.clone());
    }
    a.iter().all(|v| basis.contains(v))
}

/// Probability that `k` uniform elements of `M` generate it as a module,
/// by Möbius inversion over the submodule lattice.
pub fn module_gen_probability(m: &GModule, k: usize) -> Result<BigRational> {
    let subs = submodules(m)?;
    let field = m.field();
    let dim = m.dim();
    let mu = mobius_to_top(subs.len(), |a, t| {
        subs[a].len() < subs[t].len() && contained(field, dim, &subs[a], &subs[t])
    });
    let q = BigInt::from(field.order());
    Ok(subs
        .iter()
        .zip(&mu)
        .filter(|(_, &mu)| mu != 0)
        .map(|(s, &mu)| {
            let ratio = BigRational::new(Pow::pow(&q, s.len()), Pow::pow(&q, dim));
            BigRational::from_integer(BigInt::from(mu)) * Pow::pow(&ratio, k)
        })
        .fold(BigRational::zero(), |a, b| a + b))
}

/// `P(k)` for the regular module against `1 − Σ_n m^⊲_n n^{−k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularGenerationBound {
    pub k: usize,
    pub probability: BigRational,
    pub lower: BigRational,
}

impl RegularGenerationBound {
    pub fn holds(&self) -> bool {
        self.probability >= self.lower
    }
}

pub fn regular_generation_bound_check(g: &GroupRef, p: u32, k: usize) -> Result<RegularGenerationBound> {
    let field = FqField::prime(p)?;
    let regular = GModule::regular(g, &field);
    let probability = module_gen_probability(&regular, k)?;
    let census = ideal_census(g, p, g.order())?;
    let lower = census
        .rows
        .iter()
        .map(|row| {
            let index: BigInt = Pow::pow(&BigInt::from(p), row.n);
            BigRational::new(BigInt::from(row.ideals), Pow::pow(&index, k))
        })
        .fold(BigRational::one(), |a, b| a - b);
    Ok(RegularGenerationBound { k, probability, lower })
}
