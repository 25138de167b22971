use num_bigint::BigUint;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::ffalg::{Elem, FqField, Matrix};

/// Largest `q^{n²}` scanned by the exhaustive counts.
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

/// `GL_n(F_q)` with its exact order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlSpec {
    pub n: usize,
    pub q: u64,
    pub order: BigUint,
}

impl GlSpec {
    pub fn new(n: usize, q: u64) -> Self {
        GlSpec { n, q, order: gl_order(n, q) }
    }
}

/// `|GL_n(F_q)| = ∏_{i<n} (q^n − q^i)`.
pub fn gl_order(n: usize, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let qn: BigUint = Pow::pow(&q, n);
    (0..n).fold(BigUint::one(), |acc, i| acc * (&qn - Pow::pow(&q, i)))
}

/// Order of the block upper-triangular subgroup `P(n1, n2)` of
/// `GL_{n1+n2}(F_q)`.
pub fn parabolic_order(n1: usize, n2: usize, q: u64) -> BigUint {
    gl_order(n1, q) * gl_order(n2, q) * Pow::pow(&BigUint::from(q), n1 * n2)
}

/// Number of `n × n` matrices over `F_q`, if within the exhaustive limit.
pub(crate) fn matrix_count(field: &FqField, n: usize, limit: u64) -> Result<u64> {
    let q = field.order() as u64;
    q.checked_pow((n * n) as u32)
        .filter(|&c| c <= limit)
        .ok_or_else(|| Error::bound("q^(n^2) matrices", limit, q.saturating_pow((n * n) as u32)))
}

/// Matrix with row-major entries given by the base-`q` digits of `code`,
/// most significant first, so that numeric order is lexicographic order.
pub fn decode_matrix(field: &FqField, n: usize, code: u64) -> Matrix {
    let mut entries = vec![0 as Elem; n * n];
    decode_into(field.order() as u64, code, &mut entries);
    Matrix::from_fn(field, n, n, |i, j| entries[i * n + j])
}

/// Inverse of [`decode_matrix`].
pub fn encode_matrix(m: &Matrix) -> u64 {
    let q = m.field().order() as u64;
    m.entries().iter().fold(0, |acc, &x| acc * q + x as u64)
}

/// Row-major entries of [`decode_matrix`] written into `out`.
fn decode_into(q: u64, code: u64, out: &mut [Elem]) {
    let mut c = code;
    for slot in out.iter_mut().rev() {
        *slot = (c % q) as Elem;
        c /= q;
    }
}

/// Invertibility of an `n × n` row-major matrix, destroying `m`.
fn eliminate_full_rank(field: &FqField, n: usize, m: &mut [Elem]) -> bool {
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r * n + col] != 0) else {
            return false;
        };
        if piv != col {
            for j in 0..n {
                m.swap(piv * n + j, col * n + j);
            }
        }
        let inv = field.inv(m[col * n + col]);
        for r in col + 1..n {
            let c = field.mul(m[r * n + col], inv);
            if c == 0 {
                continue;
            }
            for j in col..n {
                m[r * n + j] = field.sub(m[r * n + j], field.mul(c, m[col * n + j]));
            }
        }
    }
    true
}

fn count_invertible(field: &FqField, n: usize, total: u64, keep: impl Fn(&[Elem]) -> bool) -> u64 {
    let q = field.order() as u64;
    let mut buf = vec![0 as Elem; n * n];
    (0..total)
        .filter(|&c| {
            decode_into(q, c, &mut buf);
            keep(&buf) && eliminate_full_rank(field, n, &mut buf)
        })
        .count() as u64
}

/// Counts invertible matrices by scanning all of them.
pub fn exhaustive_gl_count(field: &FqField, n: usize) -> Result<u64> {
    let total = matrix_count(field, n, EXHAUSTIVE_LIMIT)?;
    Ok(count_invertible(field, n, total, |_| true))
}

/// Counts invertible block upper-triangular matrices by scanning all
/// matrices of size `n1 + n2`.
pub fn exhaustive_parabolic_count(field: &FqField, n1: usize, n2: usize) -> Result<u64> {
    let n = n1 + n2;
    let total = matrix_count(field, n, EXHAUSTIVE_LIMIT)?;
    Ok(count_invertible(field, n, total, |m| (n1..n).all(|i| (0..n1).all(|j| m[i * n + j] == 0))))
}
