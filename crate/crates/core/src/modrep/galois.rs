use std::collections::BTreeSet;

use super::census::{chop, simple_modules, SimpleRecord};
use crate::error::{Error, Result};
use crate::ffalg::FqField;
use crate::groups::GroupRef;

/// One Frobenius orbit of absolutely simple modules over `F_{p^d}` and the
/// `F_p`-simple module it descends to.
#[derive(Clone, Debug)]
pub struct GaloisOrbit {
    /// Indices into [`GaloisLevel::abs_irreducible`].
    pub members: Vec<usize>,
    /// Index into [`GaloisDescent::base`].
    pub descent: usize,
    pub member_dim: usize,
    pub descent_dim: usize,
}

impl GaloisOrbit {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `dim Φ(orbit) = |orbit| · dim(member)`.
    pub fn dimension_law_holds(&self) -> bool {
        self.descent_dim == self.members.len() * self.member_dim
    }
}

#[derive(Clone, Debug)]
pub struct GaloisLevel {
    pub d: u32,
    pub field: FqField,
    pub abs_irreducible: Vec<SimpleRecord>,
    pub orbits: Vec<GaloisOrbit>,
}

/// Galois descent data for a group and prime, for each `d ≤ d_max`.
#[derive(Clone, Debug)]
pub struct GaloisDescent {
    pub group: GroupRef,
    pub p: u32,
    pub base: Vec<SimpleRecord>,
    pub levels: Vec<GaloisLevel>,
}

impl GaloisDescent {
    pub fn dimension_law_holds(&self) -> bool {
        self.levels.iter().all(|l| l.orbits.iter().all(GaloisOrbit::dimension_law_holds))
    }
}

fn find_iso(records: &[SimpleRecord], m: &SimpleRecord) -> Option<usize> {
    records.iter().position(|r| r.is_isomorphic(m))
}

pub fn galois_orbits(g: &GroupRef, p: u32, d_max: u32) -> Result<GaloisDescent> {
    let fp = FqField::prime(p)?;
    let base = simple_modules(g, &fp)?;
    let mut levels = Vec::new();
    for d in 1..=d_max {
        let field = FqField::new(p, d)?;
        let abs: Vec<SimpleRecord> = simple_modules(g, &field)?.into_iter().filter(|s| s.abs_irred).collect();
        // Frobenius permutation of the absolutely simple modules.
        let frob: Vec<usize> = abs
            .iter()
            .map(|s| {
                let t = SimpleRecord::from_simple(s.module.frobenius_twist(1));
                find_iso(&abs, &t).ok_or_else(|| Error::Internal("Frobenius twist left the census".into()))
            })
            .collect::<Result<_>>()?;
        let mut orbit_of = vec![usize::MAX; abs.len()];
        let mut orbit_members: Vec<Vec<usize>> = Vec::new();
        for i in 0..abs.len() {
            if orbit_of[i] != usize::MAX {
                continue;
            }
            let mut members = vec![i];
            orbit_of[i] = orbit_members.len();
            let mut j = frob[i];
            while j != i {
                orbit_of[j] = orbit_members.len();
                members.push(j);
                j = frob[j];
            }
            members.sort_unstable();
            orbit_members.push(members);
        }
        let mut descent = vec![usize::MAX; orbit_members.len()];
        for (vi, v) in base.iter().enumerate() {
            if d as usize % v.endo_degree != 0 {
                continue;
            }
            let factors = chop(&v.module.base_change(&field)?)?;
            let mut hit = BTreeSet::new();
            for f in &factors {
                if f.multiplicity != 1 || !f.record.abs_irred {
                    return Err(Error::Internal(format!(
                        "base change of an F_{p}-simple has a factor of multiplicity {} (absolutely simple: {})",
                        f.multiplicity, f.record.abs_irred
                    )));
                }
                let j = find_iso(&abs, &f.record)
                    .ok_or_else(|| Error::Internal("base-change factor missing from the census".into()))?;
                hit.insert(j);
            }
            let orbit = orbit_of[*hit.iter().next().ok_or_else(|| Error::Internal("empty base change".into()))?];
            let expected: BTreeSet<usize> = orbit_members[orbit].iter().copied().collect();
            if hit != expected {
                return Err(Error::Internal("base change does not split into one Galois orbit".into()));
            }
            if descent[orbit] != usize::MAX {
                return Err(Error::Internal("two F_p-simples descend from the same orbit".into()));
            }
            descent[orbit] = vi;
        }
        if descent.iter().any(|&x| x == usize::MAX) {
            return Err(Error::Internal("a Galois orbit has no F_p-simple".into()));
        }
        let orbits = orbit_members
            .into_iter()
            .zip(descent)
            .map(|(members, vi)| GaloisOrbit {
                member_dim: abs[members[0]].dim(),
                descent_dim: base[vi].dim(),
                members,
                descent: vi,
            })
            .collect();
        levels.push(GaloisLevel {
            d,
            field,
            abs_irreducible: abs,
            orbits,
        });
    }
    Ok(GaloisDescent {
        group: g.clone(),
        p,
        base,
        levels,
    })
}

/// The three ways of counting `F_p`-simples of dimension `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorSum {
    pub n: usize,
    /// `r_n(G, F_p)` from the census over `F_p`.
    pub direct: u64,
    /// `Σ_{d | n} r*_{n/d}(G, F_{p^d})`.
    pub upper: u64,
    /// Orbits of size exactly `d` on absolutely simple modules of dimension
    /// `n/d` over `F_{p^d}`, summed over `d | n`.
    pub exact: u64,
}

impl DivisorSum {
    pub fn holds(&self) -> bool {
        self.direct <= self.upper && self.direct == self.exact
    }
}

pub fn divisor_sum_check(g: &GroupRef, p: u32, n: usize) -> Result<DivisorSum> {
    let fp = FqField::prime(p)?;
    let direct = simple_modules(g, &fp)?.iter().filter(|s| s.dim() == n).count() as u64;
    let mut upper = 0;
    let mut exact = 0;
    for d in (1..=n).filter(|d| n % d == 0) {
        let field = FqField::new(p, d as u32)?;
        let abs: Vec<SimpleRecord> = simple_modules(g, &field)?
            .into_iter()
            .filter(|s| s.abs_irred && s.dim() == n / d)
            .collect();
        upper += abs.len() as u64;
        let mut seen = vec![false; abs.len()];
        for i in 0..abs.len() {
            if seen[i] {
                continue;
            }
            let mut size = 0;
            let mut cur = abs[i].clone();
            loop {
                let j = find_iso(&abs, &cur).ok_or_else(|| Error::Internal("twist left the census".into()))?;
                if seen[j] {
                    break;
                }
                seen[j] = true;
                size += 1;
                cur = SimpleRecord::from_simple(cur.module.frobenius_twist(1));
            }
            if size == d {
                exact += 1;
            }
        }
    }
    Ok(DivisorSum { n, direct, upper, exact })
}
