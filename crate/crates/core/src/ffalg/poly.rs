//! Univariate polynomials over `F_q`, stored lowest degree first with no
//! trailing zeros.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{EchelonBasis, Elem, FqField, Matrix};

const SEED: u64 = 0x706f_6c79_6661_6374;

pub type Poly = Vec<Elem>;

fn trim(mut f: Poly) -> Poly {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn degree(f: &[Elem]) -> Option<usize> {
    f.len().checked_sub(1)
}

fn zip_with(f: &[Elem], g: &[Elem], op: impl Fn(Elem, Elem) -> Elem) -> Poly {
    let n = f.len().max(g.len());
    let out = (0..n)
        .map(|i| op(f.get(i).copied().unwrap_or(0), g.get(i).copied().unwrap_or(0)))
        .collect();
    trim(out)
}

fn add(field: &FqField, f: &[Elem], g: &[Elem]) -> Poly {
    zip_with(f, g, |a, b| field.add(a, b))
}

fn sub(field: &FqField, f: &[Elem], g: &[Elem]) -> Poly {
    zip_with(f, g, |a, b| field.sub(a, b))
}

fn mul(field: &FqField, f: &[Elem], g: &[Elem]) -> Poly {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = field.add(out[i + j], field.mul(a, b));
        }
    }
    trim(out)
}

fn div_rem(field: &FqField, f: &[Elem], g: &[Elem]) -> (Poly, Poly) {
    let dg = degree(g).expect("division by the zero polynomial");
    let mut r = f.to_vec();
    if r.len() <= dg {
        return (Vec::new(), trim(r));
    }
    let mut quot = vec![0; r.len() - dg];
    let lead_inv = field.inv(g[dg]);
    for i in (dg..r.len()).rev() {
        let c = field.mul(r[i], lead_inv);
        if c == 0 {
            continue;
        }
        quot[i - dg] = c;
        for (j, &b) in g.iter().enumerate() {
            r[i - dg + j] = field.sub(r[i - dg + j], field.mul(c, b));
        }
    }
    r.truncate(dg);
    (trim(quot), trim(r))
}

fn rem(field: &FqField, f: &[Elem], g: &[Elem]) -> Poly {
    div_rem(field, f, g).1
}

fn monic(field: &FqField, f: Poly) -> Poly {
    match f.last() {
        Some(&l) if l != 1 => {
            let inv = field.inv(l);
            f.into_iter().map(|c| field.mul(c, inv)).collect()
        }
        _ => f,
    }
}

/// Monic greatest common divisor.
pub fn gcd(field: &FqField, f: &[Elem], g: &[Elem]) -> Poly {
    let mut a = trim(f.to_vec());
    let mut b = trim(g.to_vec());
    while !b.is_empty() {
        let r = rem(field, &a, &b);
        a = b;
        b = r;
    }
    monic(field, a)
}

fn pow_mod(field: &FqField, base: &[Elem], mut n: u64, m: &[Elem]) -> Poly {
    let mut result = rem(field, &[1], m);
    let mut b = rem(field, base, m);
    while n > 0 {
        if n & 1 == 1 {
            result = rem(field, &mul(field, &result, &b), m);
        }
        b = rem(field, &mul(field, &b, &b), m);
        n >>= 1;
    }
    result
}

fn derivative(field: &FqField, f: &[Elem]) -> Poly {
    let out = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| field.mul(field.from_int(i as i64), c))
        .collect();
    trim(out)
}

/// `g` with `g^p = f`, for `f` with zero derivative.
fn pth_root(field: &FqField, f: &[Elem]) -> Poly {
    let p = field.characteristic() as usize;
    let e = field.degree();
    let out = f
        .iter()
        .step_by(p)
        .map(|&c| field.frobenius(c, e - 1))
        .collect();
    trim(out)
}

/// Distinct monic irreducible factors of a nonzero polynomial, sorted.
pub fn irreducible_factors(field: &FqField, f: &[Elem]) -> Vec<Poly> {
    let mut out = Vec::new();
    collect_factors(field, &monic(field, trim(f.to_vec())), &mut out);
    out.sort();
    out.dedup();
    out
}

fn collect_factors(field: &FqField, f: &[Elem], out: &mut Vec<Poly>) {
    if degree(f).map_or(true, |d| d == 0) {
        return;
    }
    let df = derivative(field, f);
    if df.is_empty() {
        collect_factors(field, &monic(field, pth_root(field, f)), out);
        return;
    }
    let g = gcd(field, f, &df);
    let (squarefree, _) = div_rem(field, f, &g);
    distinct_degree(field, monic(field, squarefree), out);
    collect_factors(field, &g, out);
}

fn distinct_degree(field: &FqField, mut s: Poly, out: &mut Vec<Poly>) {
    let q = field.order() as u64;
    let x: Poly = vec![0, 1];
    let mut xp = rem(field, &x, &s);
    let mut d = 1;
    while degree(&s).unwrap_or(0) >= 2 * d {
        xp = pow_mod(field, &xp, q, &s);
        let g = gcd(field, &s, &sub(field, &xp, &x));
        if degree(&g).unwrap_or(0) > 0 {
            equal_degree(field, g.clone(), d, out);
            s = monic(field, div_rem(field, &s, &g).0);
            xp = rem(field, &xp, &s);
        }
        d += 1;
    }
    if degree(&s).unwrap_or(0) > 0 {
        out.push(s);
    }
}

/// Cantor–Zassenhaus splitting of a product of distinct irreducibles of
/// degree `d`.
fn equal_degree(field: &FqField, h: Poly, d: usize, out: &mut Vec<Poly>) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ h.len() as u64);
    let mut stack = vec![h];
    let q = field.order();
    while let Some(h) = stack.pop() {
        let n = degree(&h).expect("nonzero factor");
        if n == d {
            out.push(h);
            continue;
        }
        loop {
            let r = trim((0..n).map(|_| rng.gen_range(0..q)).collect());
            if degree(&r).unwrap_or(0) == 0 {
                continue;
            }
            let g = gcd(field, &h, &splitting_poly(field, &r, d, &h));
            let dg = degree(&g).unwrap_or(0);
            if dg > 0 && dg < n {
                let (other, _) = div_rem(field, &h, &g);
                stack.push(monic(field, other));
                stack.push(g);
                break;
            }
        }
    }
}

fn splitting_poly(field: &FqField, r: &[Elem], d: usize, h: &[Elem]) -> Poly {
    let q = field.order() as u64;
    if q % 2 == 1 {
        let u = pow_mod(field, r, (q - 1) / 2, h);
        let mut acc = rem(field, &[1], h);
        let mut t = u;
        for _ in 0..d {
            acc = rem(field, &mul(field, &acc, &t), h);
            t = pow_mod(field, &t, q, h);
        }
        sub(field, &acc, &[1])
    } else {
        let bits = field.degree() as usize * d;
        let mut acc: Poly = Vec::new();
        let mut t = rem(field, r, h);
        for _ in 0..bits {
            acc = add(field, &acc, &t);
            t = rem(field, &mul(field, &t, &t), h);
        }
        acc
    }
}

/// Monic generator of the ideal of polynomials `f` with `f(a) v = 0`.
pub fn local_minimal_polynomial(a: &Matrix, v: &[Elem]) -> Poly {
    let field = a.field();
    let n = a.rows();
    let mut basis = EchelonBasis::new(field, n + n + 1);
    let mut w = v.to_vec();
    for k in 0..=n {
        let mut aug = w.clone();
        aug.resize(n + n + 1, 0);
        aug[n + k] = 1;
        let r = basis.reduce(aug.clone());
        if r[..n].iter().all(|&x| x == 0) {
            return monic(field, trim(r[n..].to_vec()));
        }
        basis.insert(aug);
        w = a.mul_vec(&w);
    }
    unreachable!("a vector of length n has a relation of degree at most n")
}

/// `f(a)` by Horner's rule.
pub fn evaluate(f: &[Elem], a: &Matrix) -> Matrix {
    let field = a.field();
    let n = a.rows();
    let mut acc = Matrix::zeros(field, n, n);
    for &c in f.iter().rev() {
        acc = acc.mul(a).add(&Matrix::scalar(field, n, c));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_irreducible_by_search(field: &FqField, f: &[Elem]) -> bool {
        let n = f.len() - 1;
        let q = field.order() as u64;
        for d in 1..=n / 2 {
            for code in 0..q.pow(d as u32) {
                let mut g: Poly = (0..d).map(|i| ((code / q.pow(i as u32)) % q) as Elem).collect();
                g.push(1);
                if rem(field, f, &g).is_empty() {
                    return false;
                }
            }
        }
        n >= 1
    }

    proptest! {
        #[test]
        fn factors_are_irreducible_and_divide(
            fq in prop::sample::select(vec![(2u32, 1u32), (3, 1), (5, 1), (2, 2), (3, 2)]),
            coeffs in prop::collection::vec(0u32..64, 1..8),
        ) {
            let field = FqField::new(fq.0, fq.1).unwrap();
            let q = field.order();
            let mut f: Poly = coeffs.iter().map(|&c| c % q).collect();
            f.push(1);
            let factors = irreducible_factors(&field, &f);
            for g in &factors {
                prop_assert!(is_irreducible_by_search(&field, g));
                prop_assert!(rem(&field, &f, g).is_empty());
            }
            let mut radical: Poly = vec![1];
            for g in &factors {
                radical = mul(&field, &radical, g);
            }
            let mut power = radical.clone();
            for _ in 0..f.len() {
                power = mul(&field, &power, &radical);
            }
            prop_assert!(rem(&field, &power, &f).is_empty());
        }
    }

    #[test]
    fn local_minimal_polynomial_of_companion_matrix() {
        let field = FqField::prime(5).unwrap();
        let f: Poly = vec![3, 0, 4, 1, 0, 1];
        let n = f.len() - 1;
        let a = Matrix::from_fn(&field, n, n, |i, j| {
            if j == n - 1 {
                field.neg(f[i])
            } else if i == j + 1 {
                1
            } else {
                0
            }
        });
        let mut e0 = vec![0; n];
        e0[0] = 1;
        assert_eq!(local_minimal_polynomial(&a, &e0), f);
        assert!(evaluate(&f, &a).is_zero());
    }
}
