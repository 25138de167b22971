use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::orders::{decode_matrix, encode_matrix, matrix_count};
use crate::error::{Error, Result};
use crate::ffalg::{intertwiner_space, Elem, FqField, Matrix};
use crate::modrep::meataxe::is_irreducible_actions;

/// Largest `|GL_n(F_p)|^d` enumerated by [`tuple_census`].
pub const TUPLE_BUDGET: u64 = 100_000_000;
/// Largest `p^{n²}` scanned when listing `GL_n(F_p)`.
pub const GL_SCAN_LIMIT: u64 = 1 << 24;

/// One simultaneous-conjugacy class of irreducible tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleClass {
    /// Lexicographically least tuple of the class, each matrix as rows.
    pub rep: Vec<Vec<Vec<Elem>>>,
    pub orbit_size: u64,
    pub endo_degree: usize,
}

/// Irreducible `d`-tuples in `GL_n(F_p)` up to simultaneous conjugation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleCensus {
    pub d: usize,
    pub n: usize,
    pub p: u32,
    /// `|GL_n(F_p)|^d`.
    pub total: u64,
    pub irreducible: u64,
    pub classes: Vec<TupleClass>,
}

impl TupleCensus {
    /// `r_n(F_d, F_p)`.
    pub fn iso_classes(&self) -> u64 {
        self.classes.len() as u64
    }

    pub fn orbit_sum(&self) -> u64 {
        self.classes.iter().map(|c| c.orbit_size).sum()
    }

    /// Every orbit has size `|GL| / (p^e − 1)` and the orbits cover the
    /// irreducible tuples.
    pub fn accounting_holds(&self, gl_order: u64) -> bool {
        self.orbit_sum() == self.irreducible
            && self.classes.iter().all(|c| {
                let units = (self.p as u64).pow(c.endo_degree as u32) - 1;
                c.orbit_size * units == gl_order
            })
    }
}

/// `GL_n(F_p)` sorted by code.
pub(crate) struct GlList {
    pub field: FqField,
    pub n: usize,
    pub mats: Vec<Matrix>,
    pub codes: Vec<u64>,
}

impl GlList {
    pub fn new(field: &FqField, n: usize) -> Result<Self> {
        let count = matrix_count(field, n, GL_SCAN_LIMIT)?;
        let mats: Vec<Matrix> = (0..count)
            .into_par_iter()
            .map(|c| decode_matrix(field, n, c))
            .filter(Matrix::is_invertible)
            .collect();
        let codes = mats.iter().map(encode_matrix).collect();
        Ok(GlList {
            field: field.clone(),
            n,
            mats,
            codes,
        })
    }

    pub fn len(&self) -> usize {
        self.mats.len()
    }

    pub fn index_of(&self, m: &Matrix) -> usize {
        self.codes
            .binary_search(&encode_matrix(m))
            .expect("conjugate of an invertible matrix is invertible")
    }

    pub fn tuple_budget(&self, d: usize) -> Result<u64> {
        let g = self.len() as u64;
        g.checked_pow(d as u32)
            .filter(|&t| t <= TUPLE_BUDGET)
            .ok_or_else(|| Error::bound("|GL_n(F_p)|^d tuples", TUPLE_BUDGET, (g as u128).saturating_pow(d as u32)))
    }

    pub fn irreducible(&self, tuple: &[Matrix]) -> Result<bool> {
        if self.n == 1 {
            return Ok(true);
        }
        is_irreducible_actions(tuple, &self.field, self.n)
    }
}

fn split_index(mut t: u64, base: u64, d: usize) -> Vec<usize> {
    let mut idx = vec![0; d];
    for slot in idx.iter_mut().rev() {
        *slot = (t % base) as usize;
        t /= base;
    }
    idx
}

fn join_index(idx: &[usize], base: u64) -> u64 {
    idx.iter().fold(0, |acc, &i| acc * base + i as u64)
}

fn validate(d: usize, n: usize) -> Result<()> {
    if d == 0 || n == 0 {
        return Err(Error::invalid("rank and dimension must be positive"));
    }
    Ok(())
}

/// Enumerates all `d`-tuples in `GL_n(F_p)` and partitions the irreducible
/// ones into simultaneous-conjugacy orbits.
pub fn tuple_census(d: usize, n: usize, p: u32) -> Result<TupleCensus> {
    validate(d, n)?;
    let field = FqField::prime(p)?;
    let gl = GlList::new(&field, n)?;
    let total = gl.tuple_budget(d)?;
    let base = gl.len() as u64;
    let flags: Vec<bool> = (0..total)
        .into_par_iter()
        .map(|t| {
            let tuple: Vec<Matrix> = split_index(t, base, d).into_iter().map(|i| gl.mats[i].clone()).collect();
            gl.irreducible(&tuple)
        })
        .collect::<Result<_>>()?;
    let irreducible = flags.iter().filter(|&&f| f).count() as u64;
    let inverses: Vec<Matrix> = gl
        .mats
        .iter()
        .map(|m| m.inverse().expect("invertible"))
        .collect();
    let mut visited = vec![false; total as usize];
    let mut classes = Vec::new();
    for t in 0..total {
        if !flags[t as usize] || visited[t as usize] {
            continue;
        }
        let idx = split_index(t, base, d);
        let tuple: Vec<Matrix> = idx.iter().map(|&i| gl.mats[i].clone()).collect();
        let orbit: Vec<u64> = gl
            .mats
            .par_iter()
            .zip(inverses.par_iter())
            .map(|(g, gi)| {
                let conj: Vec<usize> = tuple.iter().map(|a| gl.index_of(&g.mul(a).mul(gi))).collect();
                join_index(&conj, base)
            })
            .collect();
        let mut orbit_size = 0;
        for s in orbit {
            if !visited[s as usize] {
                visited[s as usize] = true;
                orbit_size += 1;
            }
        }
        classes.push(TupleClass {
            rep: tuple.iter().map(Matrix::to_rows).collect(),
            orbit_size,
            endo_degree: intertwiner_space(&tuple, &tuple)?.len(),
        });
    }
    Ok(TupleCensus {
        d,
        n,
        p,
        total,
        irreducible,
        classes,
    })
}

/// Class count by Burnside's lemma: the number of irreducible tuples fixed
/// by each element, summed over conjugacy classes of `GL_n(F_p)` and divided
/// by `|GL_n(F_p)|`. Irreducibility is decided afresh on each centralizer.
pub fn burnside_class_count(d: usize, n: usize, p: u32) -> Result<u64> {
    validate(d, n)?;
    let field = FqField::prime(p)?;
    let gl = GlList::new(&field, n)?;
    gl.tuple_budget(d)?;
    let order = gl.len();
    let mut seen = vec![false; order];
    let mut fixed_sum: u64 = 0;
    for x in 0..order {
        if seen[x] {
            continue;
        }
        let a = &gl.mats[x];
        let mut class_size = 0u64;
        for g in &gl.mats {
            let c = gl.index_of(&g.mul(a).mul(&g.inverse().expect("invertible")));
            if !seen[c] {
                seen[c] = true;
                class_size += 1;
            }
        }
        let centralizer: Vec<&Matrix> = gl.mats.iter().filter(|g| g.mul(a) == a.mul(g)).collect();
        let c = centralizer.len() as u64;
        let fixed = (0..c.pow(d as u32))
            .into_par_iter()
            .map(|t| {
                let tuple: Vec<Matrix> = split_index(t, c, d).into_iter().map(|i| centralizer[i].clone()).collect();
                gl.irreducible(&tuple).map(u64::from)
            })
            .sum::<Result<u64>>()?;
        fixed_sum += class_size * fixed;
    }
    if fixed_sum % order as u64 != 0 {
        return Err(Error::Internal("Burnside sum not divisible by |GL|".into()));
    }
    Ok(fixed_sum / order as u64)
}
