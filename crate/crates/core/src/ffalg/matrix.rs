use std::fmt;

use super::field::{Elem, FqField};
use crate::error::{Error, Result};

/// Dense row-major matrix over a finite field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: FqField,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

/// Reduced row-echelon form together with rank and pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: &FqField, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &FqField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn scalar(field: &FqField, n: usize, c: Elem) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn from_vec(field: &FqField, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&x| x >= field.order()) {
            return Err(Error::invalid(format!("{bad} is not an element of {field}")));
        }
        Ok(Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &FqField, rows: &[Vec<Elem>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::from_vec(field, rows.len(), cols, rows.concat())
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: &FqField, n: usize, cols: &[Vec<Elem>]) -> Self {
        let mut m = Self::zeros(field, n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..n {
                m.data[i * cols.len() + j] = c[i];
            }
        }
        m
    }

    pub fn from_fn(field: &FqField, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data,
        }
    }

    #[inline]
    pub fn field(&self) -> &FqField {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u32::from(i == j)))
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let f = &self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for t in 0..self.cols {
                let a = self.data[i * self.cols + t];
                if a == 0 {
                    continue;
                }
                let brow = &other.data[t * other.cols..(t + 1) * other.cols];
                if a == 1 {
                    for (o, &b) in orow.iter_mut().zip(brow) {
                        *o = f.add(*o, b);
                    }
                } else {
                    for (o, &b) in orow.iter_mut().zip(brow) {
                        *o = f.add(*o, f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(self.cols, v.len());
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { data, ..self.clone() }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn trace(&self) -> Elem {
        assert!(self.is_square());
        (0..self.rows).fold(0, |acc, i| self.field.add(acc, self.get(i, i)))
    }

    pub fn map_entries(&self, f: impl Fn(Elem) -> Elem) -> Matrix {
        Matrix {
            data: self.data.iter().map(|&x| f(x)).collect(),
            ..self.clone()
        }
    }

    /// Reinterprets the entries in another field that contains every entry
    /// (prime-subfield entries keep their encoding in every extension).
    pub fn embed(&self, field: &FqField) -> Result<Matrix> {
        Matrix::from_vec(field, self.rows, self.cols, self.data.clone())
    }

    pub fn pow(&self, mut n: u64) -> Matrix {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    m.data.swap(pr * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c));
            if inv != 1 {
                for j in c..m.cols {
                    let x = m.get(r, j);
                    m.set(r, j, f.mul(x, inv));
                }
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c);
                if factor == 0 {
                    continue;
                }
                let nf = f.neg(factor);
                for j in c..m.cols {
                    let x = f.add(m.get(i, j), f.mul(nf, m.get(r, j)));
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            matrix: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of `{x : M x = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Elem>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let f = &self.field;
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0; self.cols];
            v[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(matrix.get(r, free));
            }
            basis.push(v);
        }
        basis
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let r = aug.rref();
        if r.pivots.len() < n || r.pivots[n - 1] >= n {
            return None;
        }
        Some(Matrix::from_fn(&self.field, n, n, |i, j| r.matrix.get(i, n + j)))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{:?}>{:?}", self.field, self.to_rows())
    }
}

/// Outcome of solving `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Inconsistent,
    Solutions {
        particular: Vec<Elem>,
        nullspace: Vec<Vec<Elem>>,
    },
}

pub fn solve_linear(a: &Matrix, b: &[Elem]) -> Result<LinearSolution> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "right-hand side of length {} for {} rows",
            b.len(),
            a.rows()
        )));
    }
    let n = a.cols();
    let mut aug = Matrix::zeros(a.field(), a.rows(), n + 1);
    for i in 0..a.rows() {
        for j in 0..n {
            aug.set(i, j, a.get(i, j));
        }
        aug.set(i, n, b[i]);
    }
    let r = aug.rref();
    if r.pivots.last() == Some(&n) {
        return Ok(LinearSolution::Inconsistent);
    }
    let mut particular = vec![0; n];
    for (row, &pc) in r.pivots.iter().enumerate() {
        particular[pc] = r.matrix.get(row, n);
    }
    Ok(LinearSolution::Solutions {
        particular,
        nullspace: a.nullspace(),
    })
}

/// Basis of `{X : X·acts1[i] = acts2[i]·X for all i}`. `X` has
/// `dim(acts2)` rows and `dim(acts1)` columns.
pub fn intertwiner_space(acts1: &[Matrix], acts2: &[Matrix]) -> Result<Vec<Matrix>> {
    if acts1.len() != acts2.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} versus {} action matrices",
            acts1.len(),
            acts2.len()
        )));
    }
    if acts1.is_empty() {
        return Err(Error::invalid("intertwiner space needs the module dimensions; use intertwiner_space_dims"));
    }
    let n1 = acts1[0].rows();
    let n2 = acts2[0].rows();
    intertwiner_space_dims(acts1, acts2, n1, n2, acts1[0].field())
}

pub fn intertwiner_space_dims(
    acts1: &[Matrix],
    acts2: &[Matrix],
    n1: usize,
    n2: usize,
    field: &FqField,
) -> Result<Vec<Matrix>> {
    if acts1.len() != acts2.len() {
        return Err(Error::DimensionMismatch("action lists differ in length".into()));
    }
    for (a, b) in acts1.iter().zip(acts2) {
        if !a.is_square() || a.rows() != n1 || !b.is_square() || b.rows() != n2 {
            return Err(Error::DimensionMismatch("action matrices of wrong shape".into()));
        }
        if !a.field().same_field(field) || !b.field().same_field(field) {
            return Err(Error::DimensionMismatch("action matrices over different fields".into()));
        }
    }
    let f = field;
    let unknowns = n1 * n2;
    let var = |r: usize, c: usize| r * n1 + c;
    let mut echelon = super::EchelonBasis::new(f, unknowns);
    let mut rows = Vec::new();
    for (a, b) in acts1.iter().zip(acts2) {
        for r in 0..n2 {
            for c in 0..n1 {
                let mut eq = vec![0; unknowns];
                for t in 0..n1 {
                    let x = a.get(t, c);
                    if x != 0 {
                        eq[var(r, t)] = f.add(eq[var(r, t)], x);
                    }
                }
                for t in 0..n2 {
                    let x = b.get(r, t);
                    if x != 0 {
                        eq[var(t, c)] = f.sub(eq[var(t, c)], x);
                    }
                }
                if echelon.insert(eq.clone()) {
                    rows.push(eq);
                }
            }
        }
    }
    let sol = if rows.is_empty() {
        (0..unknowns)
            .map(|i| {
                let mut v = vec![0; unknowns];
                v[i] = 1;
                v
            })
            .collect()
    } else {
        Matrix::from_rows(f, &rows)?.nullspace()
    };
    Ok(sol
        .into_iter()
        .map(|v| Matrix::from_vec(f, n2, n1, v).expect("shape fixed above"))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u32) -> FqField {
        FqField::prime(p).unwrap()
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(&f(5), 3);
        let r = id.rref();
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 3);

        let z = Matrix::zeros(&f(5), 2, 4);
        let r = z.rref();
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);

        let m = Matrix::from_rows(&f(2), &[vec![1, 1], vec![1, 1]]).unwrap();
        let r = m.rref();
        assert_eq!(r.matrix.to_rows(), vec![vec![1, 1], vec![0, 0]]);
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
    }

    #[test]
    fn solve_examples() {
        let f5 = f(5);
        let id = Matrix::identity(&f5, 3);
        match solve_linear(&id, &[4, 0, 2]).unwrap() {
            LinearSolution::Solutions { particular, nullspace } => {
                assert_eq!(particular, vec![4, 0, 2]);
                assert!(nullspace.is_empty());
            }
            _ => panic!("identity system is consistent"),
        }
        let zero = Matrix::zeros(&f5, 2, 2);
        assert_eq!(solve_linear(&zero, &[1, 0]).unwrap(), LinearSolution::Inconsistent);

        // [1 1] x = 1 over F_3: enumerate all nine vectors.
        let f3 = f(3);
        let a = Matrix::from_rows(&f3, &[vec![1, 1]]).unwrap();
        let brute: Vec<(u32, u32)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).filter(|&(x, y)| (x + y) % 3 == 1).collect();
        assert_eq!(brute.len(), 3);
        match solve_linear(&a, &[1]).unwrap() {
            LinearSolution::Solutions { particular, nullspace } => {
                assert_eq!(particular, vec![1, 0]);
                assert_eq!(nullspace, vec![vec![2, 1]]);
                // [2,1] and [1,2] span the same line.
                let scaled: Vec<u32> = nullspace[0].iter().map(|&x| f3.mul(x, 2)).collect();
                assert_eq!(scaled, vec![1, 2]);
                for s in 0..3 {
                    let x = f3.add(particular[0], f3.mul(s, nullspace[0][0]));
                    let y = f3.add(particular[1], f3.mul(s, nullspace[0][1]));
                    assert!(brute.contains(&(x, y)));
                }
            }
            _ => panic!(),
        }
        assert!(solve_linear(&a, &[1, 2]).is_err());
    }

    #[test]
    fn intertwiners_of_identity_are_everything() {
        let f3 = f(3);
        let id = Matrix::identity(&f3, 3);
        let basis = intertwiner_space(&[id.clone()], &[id]).unwrap();
        assert_eq!(basis.len(), 9);
    }

    #[test]
    fn two_dim_s3_module_has_scalar_endomorphisms() {
        // S3 acting on {x in F_2^3 : sum x = 0}; basis e1+e2, e2+e3.
        let f2 = f(2);
        let a = Matrix::from_rows(&f2, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = Matrix::from_rows(&f2, &[vec![0, 1], vec![1, 1]]).unwrap();
        let acts = [a, b];
        let basis = intertwiner_space(&acts, &acts).unwrap();
        assert_eq!(basis.len(), 1);
        for x in &basis {
            for g in &acts {
                assert_eq!(x.mul(g), g.mul(x));
            }
        }
        // Trivial module versus the 2-dim one: nothing.
        let triv = [Matrix::identity(&f2, 1), Matrix::identity(&f2, 1)];
        assert!(intertwiner_space(&triv, &acts).unwrap().is_empty());
    }

    #[test]
    fn inverse_roundtrip() {
        let f7 = f(7);
        let m = Matrix::from_rows(&f7, &[vec![1, 2], vec![3, 4]]).unwrap();
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let s = Matrix::from_rows(&f7, &[vec![1, 2], vec![2, 4]]).unwrap();
        assert!(s.inverse().is_none());
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (prop::sample::select(vec![(2u32, 1u32), (3, 1), (5, 1), (2, 2), (3, 2), (2, 3)]), 1usize..=8, 1usize..=8)
            .prop_flat_map(|((p, e), r, c)| {
                let q = p.pow(e);
                prop::collection::vec(0..q, r * c).prop_map(move |data| {
                    Matrix::from_vec(&FqField::new(p, e).unwrap(), r, c, data).unwrap()
                })
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rank_nullity(m in arb_matrix()) {
            let ns = m.nullspace();
            prop_assert_eq!(m.rank() + ns.len(), m.cols());
            for v in &ns {
                prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn rref_is_idempotent(m in arb_matrix()) {
            let once = m.rref().matrix;
            prop_assert_eq!(once.rref().matrix, once);
        }

        #[test]
        fn intertwiner_vectors_satisfy_the_system(a in arb_matrix(), b in arb_matrix()) {
            if a.is_square() && b.is_square() && a.field() == b.field() {
                let n1 = a.rows();
                let n2 = b.rows();
                let sol = intertwiner_space_dims(&[a.clone()], &[b.clone()], n1, n2, a.field()).unwrap();
                for x in sol {
                    prop_assert_eq!(x.mul(&a), b.mul(&x));
                }
            }
        }
    }
}
