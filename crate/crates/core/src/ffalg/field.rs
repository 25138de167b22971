//! Finite fields `F_{p^e}` with table-driven arithmetic.
//!
//! Elements are encoded as integers `0..q`: the base-`p` digits of the
//! encoding are the coefficients of the polynomial representative, least
//! significant digit first. The prime subfield is therefore `0..p`, and an
//! element of `F_p` keeps its encoding in every extension.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order supported.
pub const MAX_FIELD_ORDER: u32 = 1 << 16;

/// Field orders up to this size get a full addition table.
const ADD_TABLE_LIMIT: u32 = 1024;

pub type Elem = u32;

#[derive(Clone)]
pub struct FqField {
    inner: Arc<FieldInner>,
}

struct FieldInner {
    p: u32,
    e: u32,
    q: u32,
    /// Monic modulus, `e + 1` coefficients, constant term first.
    modulus: Vec<u32>,
    generator: Elem,
    /// `exp[i] = g^i` for `0 <= i < 2(q-1)`.
    exp: Vec<Elem>,
    /// `log[x]` for nonzero `x`; `log[0]` is unused.
    log: Vec<u32>,
    neg: Vec<Elem>,
    add: Option<Vec<u16>>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn digits(mut x: u32, p: u32, e: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(e as usize);
    for _ in 0..e {
        out.push(x % p);
        x /= p;
    }
    out
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Remainder of `a` modulo a monic polynomial over `F_p` (constant term first).
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &c) in m.iter().enumerate() {
                let t = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - t) % p;
            }
        }
        r.pop();
    }
    r
}

fn poly_mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
        }
    }
    let mut r = poly_rem(&prod, m, p);
    r.resize(m.len() - 1, 0);
    r
}

/// Irreducibility of a monic polynomial over `F_p` by trial division with
/// every monic polynomial of degree at most half its degree.
pub fn is_irreducible_poly(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut f = digits(low as u32, p, d as u32);
            f.push(1);
            if poly_rem(m, &f, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FqField {
    /// Builds `F_{p^e}` with the lexicographically first irreducible monic
    /// modulus, ordering candidates by the integer encoding of their lower
    /// coefficients.
    pub fn new(p: u32, e: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::invalid("extension degree must be at least 1"));
        }
        let q = (p as u128).pow(e);
        if q > MAX_FIELD_ORDER as u128 {
            return Err(Error::bound("field order", MAX_FIELD_ORDER, q));
        }
        let q = q as u32;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            let mut found = None;
            for low in 0..q {
                let mut f = digits(low, p, e);
                f.push(1);
                if f[0] != 0 && is_irreducible_poly(&f, p) {
                    found = Some(f);
                    break;
                }
            }
            found.ok_or_else(|| Error::Internal(format!("no irreducible modulus of degree {e} over F_{p}")))?
        };

        let mul_raw = |a: u32, b: u32| -> u32 {
            if e == 1 {
                (a as u64 * b as u64 % p as u64) as u32
            } else {
                undigits(&poly_mul_mod(&digits(a, p, e), &digits(b, p, e), &modulus, p), p)
            }
        };

        // Smallest primitive element: its powers must sweep all q - 1 units.
        let mut exp = Vec::new();
        let mut generator = 0;
        for cand in 1..q {
            exp.clear();
            let mut x = 1u32;
            let mut ok = true;
            for i in 0..(q - 1) {
                if i > 0 && x == 1 {
                    ok = false;
                    break;
                }
                exp.push(x);
                x = mul_raw(x, cand);
            }
            if ok && x == 1 {
                generator = cand;
                break;
            }
        }
        if exp.len() != (q - 1) as usize {
            return Err(Error::Internal(format!("no primitive element in F_{q}")));
        }
        let mut log = vec![0u32; q as usize];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        let mut exp2 = exp.clone();
        exp2.extend_from_slice(&exp);

        let add_digits = |a: u32, b: u32| -> u32 {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut place = 1;
            for _ in 0..e {
                out += ((a % p + b % p) % p) * place;
                a /= p;
                b /= p;
                place *= p;
            }
            out
        };
        let neg: Vec<u32> = (0..q)
            .map(|a| {
                let d: Vec<u32> = digits(a, p, e).into_iter().map(|c| (p - c) % p).collect();
                undigits(&d, p)
            })
            .collect();
        let add = if e > 1 && p != 2 && q <= ADD_TABLE_LIMIT {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_digits(a, b) as u16;
                }
            }
            Some(t)
        } else {
            None
        };

        Ok(FqField {
            inner: Arc::new(FieldInner {
                p,
                e,
                q,
                modulus,
                generator,
                exp: exp2,
                log,
                neg,
                add,
            }),
        })
    }

    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1)
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.inner.e
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.inner.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    pub fn generator(&self) -> Elem {
        self.inner.generator
    }

    pub fn is_prime_field(&self) -> bool {
        self.inner.e == 1
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.inner.q
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.inner.p as i64) as Elem
    }

    pub fn coefficients(&self, x: Elem) -> Vec<u32> {
        digits(x, self.inner.p, self.inner.e)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let f = &*self.inner;
        if f.e == 1 {
            let s = a + b;
            if s >= f.p {
                s - f.p
            } else {
                s
            }
        } else if f.p == 2 {
            a ^ b
        } else if let Some(t) = &f.add {
            t[(a * f.q + b) as usize] as Elem
        } else {
            let (mut a, mut b) = (a, b);
            let mut out = 0;
            let mut place = 1;
            for _ in 0..f.e {
                out += ((a % f.p + b % f.p) % f.p) * place;
                a /= f.p;
                b /= f.p;
                place *= f.p;
            }
            out
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.inner.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        let f = &*self.inner;
        if a == 0 || b == 0 {
            return 0;
        }
        if f.e == 1 {
            (a as u64 * b as u64 % f.p as u64) as Elem
        } else {
            f.exp[(f.log[a as usize] + f.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse. Panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "zero has no multiplicative inverse");
        let f = &*self.inner;
        let l = f.log[a as usize];
        if l == 0 {
            1
        } else {
            f.exp[(f.q - 1 - l) as usize]
        }
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, n: u64) -> Elem {
        if n == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let f = &*self.inner;
        let l = (f.log[a as usize] as u64 * (n % (f.q as u64 - 1))) % (f.q as u64 - 1);
        f.exp[l as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Elem) -> u32 {
        assert!(a != 0);
        let m = self.inner.q - 1;
        let l = self.inner.log[a as usize];
        m / num_integer::gcd(m, l)
    }

    /// `x ↦ x^{p^d}`.
    pub fn frobenius(&self, x: Elem, d: u32) -> Elem {
        if x == 0 {
            return 0;
        }
        let f = &*self.inner;
        let m = (f.q - 1) as u64;
        let pd = (f.p as u64).pow(d % f.e.max(1)) % m.max(1);
        let l = (f.log[x as usize] as u64 * pd) % m.max(1);
        f.exp[l as usize]
    }

    pub fn same_field(&self, other: &FqField) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || (self.inner.p == other.inner.p && self.inner.e == other.inner.e)
    }
}

impl PartialEq for FqField {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl Eq for FqField {}

impl Hash for FqField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.inner.p.hash(state);
        self.inner.e.hash(state);
    }
}

impl fmt::Debug for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.inner.q)
    }
}

impl fmt::Display for FqField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.e == 1 {
            write!(f, "F_{}", self.inner.p)
        } else {
            write!(f, "F_{}^{}", self.inner.p, self.inner.e)
        }
    }
}

/// The map `x ↦ x^{p^power}` on a fixed field.
#[derive(Clone, Debug)]
pub struct FrobeniusMap {
    pub field: FqField,
    pub power: u32,
}

impl FrobeniusMap {
    pub fn new(field: FqField, power: u32) -> Self {
        FrobeniusMap { field, power }
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.field.frobenius(x, self.power)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_fields() {
        let f2 = FqField::prime(2).unwrap();
        assert_eq!(f2.elements().collect::<Vec<_>>(), vec![0, 1]);
        let f3 = FqField::prime(3).unwrap();
        assert_eq!(f3.multiplicative_order(2), 2);
        assert_eq!(f3.mul(2, 2), 1);
    }

    #[test]
    fn f4_modulus_is_first_irreducible_quadratic() {
        // Monic quadratics over F_2: x^2, x^2+1, x^2+x, x^2+x+1. Only the last
        // has no root in F_2.
        let oracle: Vec<Vec<u32>> = (0..4u32)
            .map(|low| vec![low % 2, low / 2, 1])
            .filter(|f| (0..2u32).all(|x| (f[0] + f[1] * x + f[2] * x * x) % 2 != 0))
            .collect();
        assert_eq!(oracle, vec![vec![1, 1, 1]]);
        let f4 = FqField::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        assert_eq!(f4.order(), 4);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(FqField::new(4, 1).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(FqField::new(2, 17), Err(Error::BoundExceeded { .. })));
        assert!(FqField::new(3, 0).is_err());
    }

    #[test]
    fn frobenius_examples() {
        let f2 = FqField::prime(2).unwrap();
        for x in f2.elements() {
            assert_eq!(f2.frobenius(x, 1), x);
        }
        let f4 = FqField::new(2, 2).unwrap();
        let g = f4.generator();
        assert_eq!(f4.frobenius(g, 1), f4.mul(g, g));
        assert_ne!(f4.frobenius(g, 1), g);
        for x in f4.elements() {
            assert_eq!(f4.frobenius(x, 2), x);
        }
    }

    #[test]
    fn frobenius_is_a_ring_homomorphism_on_small_fields() {
        for (p, e) in [(2, 1), (2, 2), (2, 3), (2, 4), (2, 5), (2, 6), (3, 2), (3, 3), (5, 2), (7, 2)] {
            let f = FqField::new(p, e).unwrap();
            let fr = FrobeniusMap::new(f.clone(), 1);
            for x in f.elements() {
                for y in f.elements() {
                    assert_eq!(fr.apply(f.add(x, y)), f.add(fr.apply(x), fr.apply(y)));
                    assert_eq!(fr.apply(f.mul(x, y)), f.mul(fr.apply(x), fr.apply(y)));
                }
            }
            // Frob^e is the identity.
            for x in f.elements() {
                let mut y = x;
                for _ in 0..e {
                    y = fr.apply(y);
                }
                assert_eq!(y, x);
            }
        }
    }

    #[test]
    fn field_axioms_f9() {
        let f = FqField::new(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }
}
