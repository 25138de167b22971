//! Submodule search for matrix algebras over finite fields.
//!
//! A singular algebra element `θ` certifies irreducibility when every
//! nonzero vector of `ker θ` spins to the whole space and one nonzero vector
//! of `ker θᵀ` spins to the whole space under the transposed action. When
//! `θ = g(a)` for an irreducible `g` with `dim ker θ = deg g`, one kernel
//! vector suffices.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ffalg::poly::{evaluate, irreducible_factors, local_minimal_polynomial};
use crate::ffalg::{intertwiner_space_dims, EchelonBasis, Elem, FqField, Matrix};

const MAX_WORD_LENGTH: usize = 6;
const MAX_WORDS: usize = 160;
const RANDOM_ELEMENTS: usize = 400;
const CHEAP_POINTS: u64 = 64;
const FALLBACK_POINTS: u64 = 1 << 20;
const SEED: u64 = 0x6d65_6174_6178_6521;

/// Outcome of a submodule search.
#[derive(Clone, Debug)]
pub enum Decomposition {
    Irreducible,
    /// Basis of a proper nonzero invariant subspace.
    Submodule(EchelonBasis),
}

/// Smallest invariant subspace containing `seeds`.
pub fn spin(actions: &[Matrix], field: &FqField, dim: usize, seeds: &[Vec<Elem>]) -> EchelonBasis {
    let mut basis = EchelonBasis::new(field, dim);
    let mut queue: Vec<Vec<Elem>> = Vec::new();
    for s in seeds {
        if basis.insert(s.clone()) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        if basis.is_full() {
            break;
        }
        for a in actions {
            let w = a.mul_vec(&v);
            if basis.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    basis
}

fn projective_points(field: &FqField, k: usize) -> u64 {
    let q = field.order() as u64;
    (q.saturating_pow(k as u32) - 1) / (q - 1)
}

/// Calls `f` on one representative of every projective point of the span.
fn for_each_point(field: &FqField, basis: &[Vec<Elem>], mut f: impl FnMut(&[Elem]) -> bool) -> bool {
    let k = basis.len();
    let q = field.order();
    let n = basis.first().map_or(0, Vec::len);
    for lead in 0..k {
        let free = k - lead - 1;
        let total = (q as u64).pow(free as u32);
        for code in 0..total {
            let mut c = code;
            let mut v = basis[lead].clone();
            for b in &basis[lead + 1..] {
                let coeff = (c % q as u64) as Elem;
                c /= q as u64;
                if coeff != 0 {
                    for i in 0..n {
                        v[i] = field.add(v[i], field.mul(coeff, b[i]));
                    }
                }
            }
            if !f(&v) {
                return false;
            }
        }
    }
    true
}

struct Candidate {
    theta: Matrix,
    kernel: Vec<Vec<Elem>>,
}

/// Visits candidate algebra elements in order: short words, pairwise sums,
/// seeded random combinations, then the identity. Stops when `f` returns
/// `true`.
fn visit_algebra_elements(actions: &[Matrix], field: &FqField, dim: usize, mut f: impl FnMut(&Matrix) -> bool) -> bool {
    let mut words: Vec<Matrix> = Vec::new();
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    let mut layer: Vec<Matrix> = vec![Matrix::identity(field, dim)];
    'outer: for _ in 0..MAX_WORD_LENGTH {
        let mut next = Vec::new();
        for w in &layer {
            for a in actions {
                let m = w.mul(a);
                if seen.insert(m.entries().to_vec()) {
                    if f(&m) {
                        return true;
                    }
                    words.push(m.clone());
                    next.push(m);
                    if words.len() >= MAX_WORDS {
                        break 'outer;
                    }
                }
            }
        }
        layer = next;
    }
    let base = words.len().min(12);
    for i in 0..base {
        for j in i + 1..base {
            if f(&words[i].add(&words[j])) {
                return true;
            }
        }
    }
    if !words.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(SEED);
        let q = field.order();
        for _ in 0..RANDOM_ELEMENTS {
            let terms = rng.gen_range(2..=4usize);
            let mut m = Matrix::zeros(field, dim, dim);
            for _ in 0..terms {
                let w = &words[rng.gen_range(0..words.len())];
                let c = rng.gen_range(1..q);
                m = m.add(&w.scale(c));
            }
            if f(&m) {
                return true;
            }
        }
    }
    f(&Matrix::identity(field, dim))
}

/// Irreducible monic quadratics `x^2 + b x + c`.
fn irreducible_quadratics(field: &FqField) -> Vec<(Elem, Elem)> {
    let q = field.order();
    let mut out = Vec::new();
    for b in 0..q {
        for c in 0..q {
            if (0..q).all(|x| field.add(field.add(field.mul(x, x), field.mul(b, x)), c) != 0) {
                out.push((b, c));
            }
        }
    }
    out
}

fn polynomials_of(a: &Matrix, field: &FqField) -> Vec<Matrix> {
    let n = a.rows();
    let q = field.order();
    let mut out: Vec<Matrix> = (0..q.min(64))
        .map(|lambda| a.sub(&Matrix::scalar(field, n, lambda)))
        .collect();
    if q <= 9 {
        let a2 = a.mul(a);
        for (b, c) in irreducible_quadratics(field) {
            out.push(a2.add(&a.scale(b)).add(&Matrix::scalar(field, n, c)));
        }
    }
    out
}

fn annihilator(field: &FqField, dim: usize, dual: &EchelonBasis) -> EchelonBasis {
    let rows = dual.vectors().to_vec();
    let m = Matrix::from_rows(field, &rows).expect("equal-length rows");
    let mut basis = EchelonBasis::new(field, dim);
    for v in m.nullspace() {
        basis.insert(v);
    }
    basis
}

/// Norton test for a singular `θ`. `Some(result)` when conclusive.
fn norton(
    actions: &[Matrix],
    transposes: &[Matrix],
    field: &FqField,
    dim: usize,
    cand: &Candidate,
    exhaustive: bool,
) -> Option<Decomposition> {
    for v in &cand.kernel {
        let s = spin(actions, field, dim, std::slice::from_ref(v));
        if !s.is_full() {
            return Some(Decomposition::Submodule(s));
        }
    }
    let dual_kernel = cand.theta.transpose().nullspace();
    let w = dual_kernel.first()?;
    let sd = spin(transposes, field, dim, std::slice::from_ref(w));
    if !sd.is_full() {
        return Some(Decomposition::Submodule(annihilator(field, dim, &sd)));
    }
    if !exhaustive {
        return None;
    }
    let mut found = None;
    for_each_point(field, &cand.kernel, |v| {
        let s = spin(actions, field, dim, &[v.to_vec()]);
        if s.is_full() {
            true
        } else {
            found = Some(s);
            false
        }
    });
    Some(match found {
        Some(s) => Decomposition::Submodule(s),
        None => Decomposition::Irreducible,
    })
}

/// Norton test on `θ = g(a)` with `g` irreducible; conclusive when the
/// kernel is a single `F_q[a]/(g)`-line or small enough to enumerate.
fn factor_test(actions: &[Matrix], transposes: &[Matrix], field: &FqField, dim: usize, a: &Matrix) -> Option<Decomposition> {
    let mut e0 = vec![0; dim];
    e0[0] = 1;
    for g in irreducible_factors(field, &local_minimal_polynomial(a, &e0)) {
        let theta = evaluate(&g, a);
        let kernel = theta.nullspace();
        let line = kernel.len() == g.len() - 1;
        let exhaustive = projective_points(field, kernel.len()) <= FALLBACK_POINTS;
        let cand = Candidate { theta, kernel };
        if line {
            let first = Candidate { theta: cand.theta.clone(), kernel: cand.kernel[..1].to_vec() };
            return Some(norton(actions, transposes, field, dim, &first, false).unwrap_or(Decomposition::Irreducible));
        }
        if let Some(res) = norton(actions, transposes, field, dim, &cand, exhaustive) {
            return Some(res);
        }
    }
    None
}

/// Finds a proper nonzero invariant subspace or proves there is none.
pub fn find_submodule(actions: &[Matrix], field: &FqField, dim: usize) -> Result<Decomposition> {
    if dim <= 1 {
        return Ok(Decomposition::Irreducible);
    }
    if actions.is_empty() {
        let mut b = EchelonBasis::new(field, dim);
        let mut e0 = vec![0; dim];
        e0[0] = 1;
        b.insert(e0);
        return Ok(Decomposition::Submodule(b));
    }
    let transposes: Vec<Matrix> = actions.iter().map(Matrix::transpose).collect();
    let mut best: Option<(u64, Candidate)> = None;
    let mut result = None;
    visit_algebra_elements(actions, field, dim, |a| {
        for theta in polynomials_of(a, field) {
            let kernel = theta.nullspace();
            if kernel.is_empty() {
                continue;
            }
            let points = projective_points(field, kernel.len());
            let cand = Candidate { theta, kernel };
            let cheap = points <= CHEAP_POINTS;
            if let Some(res) = norton(actions, &transposes, field, dim, &cand, cheap) {
                result = Some(res);
                return true;
            }
            if best.as_ref().map_or(true, |(p, _)| points < *p) {
                best = Some((points, cand));
            }
        }
        false
    });
    if let Some(res) = result {
        return Ok(res);
    }
    if best.as_ref().map_or(true, |(p, _)| *p > CHEAP_POINTS) {
        visit_algebra_elements(actions, field, dim, |a| {
            result = factor_test(actions, &transposes, field, dim, a);
            result.is_some()
        });
        if let Some(res) = result {
            return Ok(res);
        }
    }
    match best {
        Some((points, cand)) if points <= FALLBACK_POINTS => {
            norton(actions, &transposes, field, dim, &cand, true)
                .ok_or_else(|| Error::Internal("Norton test without a dual kernel".into()))
        }
        _ => Err(Error::Internal("no usable singular algebra element found".into())),
    }
}

pub fn is_irreducible_actions(actions: &[Matrix], field: &FqField, dim: usize) -> Result<bool> {
    Ok(matches!(find_submodule(actions, field, dim)?, Decomposition::Irreducible))
}

/// Actions on a submodule (in its echelon basis) and on the quotient (in
/// the complementary standard basis vectors).
pub fn split_actions(actions: &[Matrix], field: &FqField, dim: usize, sub: &EchelonBasis) -> (Vec<Matrix>, Vec<Matrix>) {
    let k = sub.len();
    let pivots: HashSet<usize> = sub.pivots().iter().copied().collect();
    let complement: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    let mut subs = Vec::with_capacity(actions.len());
    let mut quots = Vec::with_capacity(actions.len());
    for a in actions {
        let mut s = Matrix::zeros(field, k, k);
        for (j, u) in sub.vectors().iter().enumerate() {
            let au = a.mul_vec(u);
            let c = sub.coordinates(&au).expect("subspace is invariant");
            for (i, &x) in c.iter().enumerate() {
                s.set(i, j, x);
            }
        }
        subs.push(s);
        let m = complement.len();
        let mut qm = Matrix::zeros(field, m, m);
        for (j, &c) in complement.iter().enumerate() {
            let r = sub.reduce(a.column(c));
            for (i, &ci) in complement.iter().enumerate() {
                qm.set(i, j, r[ci]);
            }
        }
        quots.push(qm);
    }
    (subs, quots)
}

/// Composition factors as action lists with their dimensions, in the order
/// found (bottom of the series first).
pub fn composition_factors(actions: &[Matrix], field: &FqField, dim: usize) -> Result<Vec<(usize, Vec<Matrix>)>> {
    let mut out = Vec::new();
    let mut stack = vec![(dim, actions.to_vec())];
    while let Some((d, acts)) = stack.pop() {
        if d == 0 {
            continue;
        }
        match find_submodule(&acts, field, d)? {
            Decomposition::Irreducible => out.push((d, acts)),
            Decomposition::Submodule(sub) => {
                let k = sub.len();
                let (s, q) = split_actions(&acts, field, d, &sub);
                stack.push((d - k, q));
                stack.push((k, s));
            }
        }
    }
    Ok(out)
}

/// Dimension of the space of module maps between two action lists.
pub fn hom_dimension(a: &[Matrix], da: usize, b: &[Matrix], db: usize, field: &FqField) -> Result<usize> {
    if a.is_empty() {
        return Ok(da * db);
    }
    Ok(intertwiner_space_dims(a, b, da, db, field)?.len())
}
