use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::census::TupleCensus;
use super::orders::{gl_order, parabolic_order};
use crate::error::{Error, Result};
use crate::ffalg::is_prime;

/// The census class count against both lower bounds for free groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeBound {
    pub d: usize,
    pub n: usize,
    pub p: u32,
    pub classes: u64,
    /// `c_p^d p^{n²(d−1)}` with `c_p = 1 − 1/p − 1/p²`.
    pub cp_bound: BigRational,
    /// `|GL_n|^{d−1} − Σ_{k=1}^{n−1} |P(k,n−k)|^{d−1}`.
    pub parabolic_bound: BigInt,
}

impl FreeBound {
    pub fn holds(&self) -> bool {
        let classes = BigInt::from(self.classes);
        BigRational::from_integer(classes.clone()) >= self.cp_bound && classes >= self.parabolic_bound
    }
}

/// `c_p = 1 − 1/p − 1/p²`.
pub fn c_p(p: u32) -> BigRational {
    let p = BigInt::from(p);
    let one = BigRational::one();
    let inv = BigRational::new(BigInt::one(), p.clone());
    &one - &inv - &inv * &inv
}

pub fn free_bound_check(census: &TupleCensus) -> FreeBound {
    let (d, n, p) = (census.d, census.n, census.p);
    let power = BigRational::from_integer(Pow::pow(&BigInt::from(p), n * n * (d - 1)));
    let cp_bound = Pow::pow(&c_p(p), d) * power;
    let q = p as u64;
    let parabolic: BigUint = (1..n).map(|k| Pow::pow(&parabolic_order(k, n - k, q), d - 1)).sum();
    let parabolic_bound = BigInt::from(Pow::pow(&gl_order(n, q), d - 1)) - BigInt::from(parabolic);
    FreeBound {
        d,
        n,
        p,
        classes: census.iso_classes(),
        cp_bound,
        parabolic_bound,
    }
}

/// The `p`-part of `|GL_n(F_q)|` against `p^n q^{pn}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylowBound {
    pub n: usize,
    pub q: u64,
    pub p: u32,
    pub p_part: BigUint,
    pub bound: BigUint,
}

impl SylowBound {
    pub fn holds(&self) -> bool {
        self.p_part <= self.bound
    }
}

pub fn sylow_bound_check(n: usize, q: u64, p: u32) -> Result<SylowBound> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if q < 2 {
        return Err(Error::invalid("field size must be at least 2"));
    }
    if q % p as u64 == 0 {
        return Err(Error::invalid(format!("{p} divides the field size {q}")));
    }
    let bp = BigUint::from(p);
    let mut rest = gl_order(n, q);
    let mut p_part = BigUint::one();
    while (&rest % &bp).is_zero() {
        rest /= &bp;
        p_part *= &bp;
    }
    let bound = Pow::pow(&bp, n) * Pow::pow(&BigUint::from(q), p as usize * n);
    Ok(SylowBound { n, q, p, p_part, bound })
}
