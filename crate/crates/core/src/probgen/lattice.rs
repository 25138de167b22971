use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::groups::{normal_closure, subgroups_of, GroupHom, GroupRef, Subgroup};

/// Largest kernel whose subgroups are enumerated.
pub const KERNEL_ORDER_LIMIT: usize = 200;
/// Largest `|R|^k` for the exhaustive tuple count.
pub const EXHAUSTIVE_TUPLE_LIMIT: u64 = 1_000_000;

/// Subgroups of `R = ker f` that are normal in `H`, ordered by decreasing
/// order, with `μ(N, R)` for every node.
#[derive(Clone, Debug)]
pub struct StableLattice {
    pub surjection: GroupHom,
    pub kernel: Subgroup,
    pub nodes: Vec<Subgroup>,
    pub mobius: Vec<i64>,
}

/// `μ(N, top)` for nodes sorted by decreasing size with the top first.
/// `below(a, b)` says node `a` is strictly contained in node `b`.
pub(crate) fn mobius_to_top(count: usize, below: impl Fn(usize, usize) -> bool) -> Vec<i64> {
    let mut mu = vec![0i64; count];
    for a in 0..count {
        mu[a] = if a == 0 { 1 } else { -(0..a).filter(|&t| below(a, t)).map(|t| mu[t]).sum::<i64>() };
    }
    mu
}

pub fn stable_lattice(f: &GroupHom) -> Result<StableLattice> {
    if !f.is_surjective() {
        return Err(Error::invalid("map is not surjective"));
    }
    let h = f.domain();
    let kernel = f.kernel();
    if kernel.order() > KERNEL_ORDER_LIMIT {
        return Err(Error::bound("kernel order", KERNEL_ORDER_LIMIT as u128, kernel.order() as u128));
    }
    let mut nodes: Vec<Subgroup> = subgroups_of(&kernel)?
        .into_iter()
        .filter(|s| s.is_normalized_by(h.gens()))
        .collect();
    nodes.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.elements().cmp(b.elements())));
    let mobius = mobius_to_top(nodes.len(), |a, t| {
        nodes[a].order() < nodes[t].order() && nodes[a].is_subset_of(&nodes[t])
    });
    Ok(StableLattice {
        surjection: f.clone(),
        kernel,
        nodes,
        mobius,
    })
}

impl StableLattice {
    pub fn domain(&self) -> &GroupRef {
        self.surjection.domain()
    }

    pub fn codomain(&self) -> &GroupRef {
        self.surjection.codomain()
    }

    /// Maximal proper nodes.
    pub fn maximal(&self) -> Vec<&Subgroup> {
        let proper = &self.nodes[1..];
        proper
            .iter()
            .filter(|m| {
                !proper
                    .iter()
                    .any(|t| t.order() > m.order() && m.is_subset_of(t))
            })
            .collect()
    }

    /// `m_n^H(R)`: maximal proper nodes counted by index in `R`.
    pub fn m_counts(&self) -> BTreeMap<usize, usize> {
        let mut out = BTreeMap::new();
        for m in self.maximal() {
            *out.entry(self.kernel.order() / m.order()).or_insert(0) += 1;
        }
        out
    }

    /// `P_⊲(k) = Σ_N μ(N,R) [R:N]^{−k}`.
    pub fn exact_gen_probability(&self, k: usize) -> BigRational {
        let r = self.kernel.order();
        self.nodes
            .iter()
            .zip(&self.mobius)
            .map(|(n, &mu)| {
                let ratio = BigRational::new(BigInt::from(n.order()), BigInt::from(r));
                BigRational::from_integer(BigInt::from(mu)) * Pow::pow(&ratio, k)
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// Fraction of all `k`-tuples of `R` whose normal closure in `H` is `R`.
    pub fn exhaustive_gen_probability(&self, k: usize) -> Result<BigRational> {
        let r = self.kernel.order() as u64;
        let total = r
            .checked_pow(k as u32)
            .filter(|&t| t <= EXHAUSTIVE_TUPLE_LIMIT)
            .ok_or_else(|| Error::bound("|R|^k tuples", EXHAUSTIVE_TUPLE_LIMIT, (r as u128).saturating_pow(k as u32)))?;
        let h = self.domain();
        let elems = self.kernel.elements();
        let mut hits: u64 = 0;
        for mut code in 0..total {
            let tuple: Vec<usize> = (0..k)
                .map(|_| {
                    let x = elems[(code % r) as usize];
                    code /= r;
                    x
                })
                .collect();
            if normal_closure(h, &tuple, h.gens()).order() == elems.len() {
                hits += 1;
            }
        }
        Ok(BigRational::new(BigInt::from(hits), BigInt::from(total)))
    }

    /// `1 − P_⊲(k) ≤ Σ_n m_n n^{−k}`.
    pub fn pfr_sum_bound(&self, k: usize) -> PfrSumBound {
        let failure = BigRational::one() - self.exact_gen_probability(k);
        let bound = self
            .m_counts()
            .into_iter()
            .map(|(n, m)| BigRational::new(BigInt::from(m), Pow::pow(&BigInt::from(n), k)))
            .fold(BigRational::zero(), |a, b| a + b);
        PfrSumBound { k, failure, bound }
    }

    /// `[R : M_i ∩ M_j] = [R : M_i][R : M_j]` for distinct maximal nodes.
    pub fn independence_holds(&self) -> bool {
        let maximal = self.maximal();
        let r = self.kernel.order();
        maximal.iter().enumerate().all(|(i, a)| {
            maximal[i + 1..]
                .iter()
                .all(|b| r / a.intersection(b).order() == (r / a.order()) * (r / b.order()))
        })
    }

    /// `Σ_{N ≤ T ≤ R} μ(T,R) = [N = R]` for every node `N`.
    pub fn mobius_sums_vanish(&self) -> bool {
        self.nodes.iter().enumerate().all(|(a, n)| {
            let s: i64 = self
                .nodes
                .iter()
                .zip(&self.mobius)
                .filter(|(t, _)| n.is_subset_of(t))
                .map(|(_, &mu)| mu)
                .sum();
            s == i64::from(a == 0)
        })
    }
}

/// Both sides of `1 − P_⊲(k) ≤ Σ_n m_n n^{−k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PfrSumBound {
    pub k: usize,
    pub failure: BigRational,
    pub bound: BigRational,
}

impl PfrSumBound {
    pub fn holds(&self) -> bool {
        self.failure <= self.bound
    }
}
