//! Finite fields and dense linear algebra over them.

mod field;
mod matrix;
pub mod poly;

pub use field::{is_irreducible_poly, is_prime, Elem, FqField, FrobeniusMap, MAX_FIELD_ORDER};
pub use matrix::{intertwiner_space, intertwiner_space_dims, solve_linear, LinearSolution, Matrix, Rref};

/// Row vectors kept in semi-echelon form: each stored vector has a pivot
/// entry equal to 1 and every other stored vector is zero in that column.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: FqField,
    dim: usize,
    vectors: Vec<Vec<Elem>>,
    pivots: Vec<usize>,
}

impl EchelonBasis {
    pub fn new(field: &FqField, dim: usize) -> Self {
        EchelonBasis {
            field: field.clone(),
            dim,
            vectors: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.vectors.len() == self.dim
    }

    pub fn vectors(&self) -> &[Vec<Elem>] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Residue of `v` after clearing every stored pivot column.
    pub fn reduce(&self, mut v: Vec<Elem>) -> Vec<Elem> {
        let f = &self.field;
        for (b, &pc) in self.vectors.iter().zip(&self.pivots) {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            for (x, &y) in v.iter_mut().zip(b) {
                if y != 0 {
                    *x = f.add(*x, f.mul(nc, y));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    /// Adds `v` to the span; returns false if it was already there.
    pub fn insert(&mut self, v: Vec<Elem>) -> bool {
        let mut r = self.reduce(v);
        let Some(pc) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        let f = &self.field;
        let inv = f.inv(r[pc]);
        for x in r.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for b in self.vectors.iter_mut() {
            let c = b[pc];
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            for (x, &y) in b.iter_mut().zip(&r) {
                if y != 0 {
                    *x = f.add(*x, f.mul(nc, y));
                }
            }
        }
        self.vectors.push(r);
        self.pivots.push(pc);
        true
    }

    /// Coordinates of `v` in the stored basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        let coords: Vec<Elem> = self.pivots.iter().map(|&pc| v[pc]).collect();
        let f = &self.field;
        let mut r = v.to_vec();
        for (b, &c) in self.vectors.iter().zip(&coords) {
            if c == 0 {
                continue;
            }
            let nc = f.neg(c);
            for (x, &y) in r.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(nc, y));
            }
        }
        r.iter().all(|&x| x == 0).then_some(coords)
    }

    /// Canonical form of the span: the reduced row-echelon basis.
    pub fn canonical(&self) -> Vec<Vec<Elem>> {
        if self.vectors.is_empty() {
            return Vec::new();
        }
        let m = Matrix::from_rows(&self.field, &self.vectors).expect("rows of equal length");
        let r = m.rref();
        r.matrix.to_rows().into_iter().take(r.rank).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn echelon_insert_and_coordinates() {
        let f = FqField::prime(3).unwrap();
        let mut b = EchelonBasis::new(&f, 3);
        assert!(b.insert(vec![1, 2, 0]));
        assert!(b.insert(vec![0, 1, 1]));
        assert!(!b.insert(vec![1, 0, 1]));
        assert_eq!(b.len(), 2);
        let v = vec![2, 0, 2];
        let c = b.coordinates(&v).unwrap();
        let mut back = vec![0; 3];
        for (bv, &ci) in b.vectors().iter().zip(&c) {
            for (x, &y) in back.iter_mut().zip(bv) {
                *x = f.add(*x, f.mul(ci, y));
            }
        }
        assert_eq!(back, v);
        assert!(b.coordinates(&[0, 0, 1]).is_none());
    }
}
