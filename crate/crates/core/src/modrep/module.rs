use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::ffalg::{Elem, FqField, Matrix};
use crate::groups::{GroupHom, GroupRef, Subgroup};

/// Dimension above which construction skips the exhaustive edge check.
const VERIFY_DIM_LIMIT: usize = 64;

/// A module over the group algebra, acting on column vectors: the matrix
/// of `gh` is the matrix of `g` times the matrix of `h`.
#[derive(Clone)]
pub struct GModule {
    group: GroupRef,
    field: FqField,
    dim: usize,
    action: Arc<Vec<Matrix>>,
    elements: Arc<OnceLock<Vec<Matrix>>>,
}

impl std::fmt::Debug for GModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GModule({} over {}, dim {})", self.group.label(), self.field, self.dim)
    }
}

impl GModule {
    /// Module from one matrix per generator of `group`, verified on every
    /// edge `(g, s)` of the Cayley graph.
    pub fn new(group: &GroupRef, field: &FqField, action: Vec<Matrix>) -> Result<Self> {
        let m = Self::new_unchecked(group, field, action)?;
        m.verify()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(group: &GroupRef, field: &FqField, action: Vec<Matrix>) -> Result<Self> {
        if action.len() != group.gens().len() {
            return Err(Error::DimensionMismatch(format!(
                "{} action matrices for {} generators",
                action.len(),
                group.gens().len()
            )));
        }
        let dim = action.first().map_or(0, |a| a.rows());
        for a in &action {
            if !a.is_square() || a.rows() != dim {
                return Err(Error::DimensionMismatch("action matrices must be square of equal size".into()));
            }
            if !a.field().same_field(field) {
                return Err(Error::DimensionMismatch("action matrix over a different field".into()));
            }
        }
        if group.gens().is_empty() && dim == 0 {
            return Err(Error::invalid("the dimension of a module of the trivial group must be given"));
        }
        Ok(GModule {
            group: group.clone(),
            field: field.clone(),
            dim,
            action: Arc::new(action),
            elements: Arc::new(OnceLock::new()),
        })
    }

    /// Trivial-action module of dimension `dim`.
    pub fn trivial(group: &GroupRef, field: &FqField, dim: usize) -> Self {
        let id = Matrix::identity(field, dim);
        GModule {
            group: group.clone(),
            field: field.clone(),
            dim,
            action: Arc::new(vec![id; group.gens().len()]),
            elements: Arc::new(OnceLock::new()),
        }
    }

    /// Module for the trivial group or any group whose generators act by
    /// the given matrices, allowing an empty generator list.
    pub fn with_dim(group: &GroupRef, field: &FqField, dim: usize, action: Vec<Matrix>) -> Result<Self> {
        if action.is_empty() {
            return Ok(Self::trivial(group, field, dim));
        }
        if action[0].rows() != dim {
            return Err(Error::DimensionMismatch("stated dimension differs from the matrices".into()));
        }
        Self::new(group, field, action)
    }

    /// The regular module with basis `e_h` and `g e_h = e_{gh}`.
    pub fn regular(group: &GroupRef, field: &FqField) -> Self {
        let n = group.order();
        let action: Vec<Matrix> = group
            .gens()
            .iter()
            .map(|&s| {
                let mut m = Matrix::zeros(field, n, n);
                for h in group.elements() {
                    m.set(group.mul(s, h), h, 1);
                }
                m
            })
            .collect();
        GModule {
            group: group.clone(),
            field: field.clone(),
            dim: n,
            action: Arc::new(action),
            elements: Arc::new(OnceLock::new()),
        }
    }

    /// Permutation module of the action of `group` on the right cosets of `h`
    /// by right multiplication inverse, i.e. `g (H x) = H x g^-1`.
    pub fn coset_permutation(h: &Subgroup, field: &FqField) -> Self {
        let group = h.parent().clone();
        let (coset, reps) = h.right_cosets();
        let k = reps.len();
        let action = group
            .gens()
            .iter()
            .map(|&s| {
                let mut m = Matrix::zeros(field, k, k);
                let si = group.inv(s);
                for (c, &r) in reps.iter().enumerate() {
                    m.set(coset[group.mul(r, si)], c, 1);
                }
                m
            })
            .collect();
        GModule {
            group: group.clone(),
            field: field.clone(),
            dim: k,
            action: Arc::new(action),
            elements: Arc::new(OnceLock::new()),
        }
    }

    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn field(&self) -> &FqField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn action(&self) -> &[Matrix] {
        &self.action
    }

    pub fn verify(&self) -> Result<()> {
        for a in self.action.iter() {
            if !a.is_invertible() {
                return Err(Error::NotHomomorphism("generator acts by a singular matrix".into()));
            }
        }
        if self.dim > VERIFY_DIM_LIMIT {
            return Ok(());
        }
        let mats = self.element_matrices();
        let g = &self.group;
        if !mats[g.identity()].is_identity() {
            return Err(Error::NotHomomorphism("identity does not act trivially".into()));
        }
        for x in g.elements() {
            for (i, &s) in g.gens().iter().enumerate() {
                if mats[x].mul(&self.action[i]) != mats[g.mul(x, s)] {
                    return Err(Error::NotHomomorphism(format!(
                        "action fails on ({x}, generator {s})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Matrices of all group elements, built along the Schreier tree.
    pub fn element_matrices(&self) -> &[Matrix] {
        self.elements.get_or_init(|| {
            let g = &self.group;
            let tree = g.tree();
            let mut mats: Vec<Option<Matrix>> = vec![None; g.order()];
            mats[g.identity()] = Some(Matrix::identity(&self.field, self.dim));
            for &x in &tree.order[1..] {
                let p = mats[tree.parent[x]].as_ref().expect("parent precedes child");
                mats[x] = Some(p.mul(&self.action[tree.gen[x]]));
            }
            mats.into_iter().map(|m| m.expect("tree spans the group")).collect()
        })
    }

    /// Matrix of one element without caching the whole table.
    pub fn element_matrix(&self, g: usize) -> Matrix {
        if let Some(m) = self.elements.get() {
            return m[g].clone();
        }
        let word = self.group.tree().word(g);
        word.iter()
            .fold(Matrix::identity(&self.field, self.dim), |acc, &i| acc.mul(&self.action[i]))
    }

    pub fn act(&self, g: usize, v: &[Elem]) -> Vec<Elem> {
        if let Some(m) = self.elements.get() {
            return m[g].mul_vec(v);
        }
        let word = self.group.tree().word(g);
        word.iter().rev().fold(v.to_vec(), |acc, &i| self.action[i].mul_vec(&acc))
    }

    /// Restriction along a homomorphism `f: H -> G` into this module's group.
    pub fn restrict(&self, f: &GroupHom) -> Result<GModule> {
        if !Arc::ptr_eq(f.codomain(), &self.group) {
            return Err(Error::invalid("homomorphism does not land in the module's group"));
        }
        let h = f.domain();
        let action = h.gens().iter().map(|&s| self.element_matrix(f.apply(s))).collect();
        if h.gens().is_empty() {
            return Ok(GModule::trivial(h, &self.field, self.dim));
        }
        GModule::new_unchecked(h, &self.field, action)
    }

    /// Inflation along a surjection `f: E -> G` from this module's group.
    pub fn inflate(&self, f: &GroupHom) -> Result<GModule> {
        if !Arc::ptr_eq(f.codomain(), &self.group) {
            return Err(Error::invalid("surjection does not land in the module's group"));
        }
        self.restrict(f)
    }

    /// Same matrices read over an extension field of the current one.
    pub fn base_change(&self, field: &FqField) -> Result<GModule> {
        if field.characteristic() != self.field.characteristic() || field.degree() % self.field.degree() != 0 {
            return Err(Error::invalid(format!("{field} is not an extension of {}", self.field)));
        }
        if self.field.degree() != 1 && field != &self.field {
            return Err(Error::invalid("base change is only supported from prime fields"));
        }
        let action = self.action.iter().map(|m| m.embed(field)).collect::<Result<Vec<_>>>()?;
        Ok(GModule {
            group: self.group.clone(),
            field: field.clone(),
            dim: self.dim,
            action: Arc::new(action),
            elements: Arc::new(OnceLock::new()),
        })
    }

    /// The same module over the prime field, in the basis `x^t e_j`.
    pub fn restrict_scalars(&self) -> Result<GModule> {
        let e = self.field.degree() as usize;
        if e == 1 {
            return Ok(self.clone());
        }
        let fp = FqField::prime(self.field.characteristic())?;
        let p = self.field.characteristic();
        let basis: Vec<Elem> = (0..e as u32).map(|t| p.pow(t)).collect();
        let f = &self.field;
        let action = self
            .action
            .iter()
            .map(|m| {
                Matrix::from_fn(&fp, self.dim * e, self.dim * e, |r, c| {
                    let x = f.mul(m.get(r / e, c / e), basis[c % e]);
                    f.coefficients(x)[r % e]
                })
            })
            .collect();
        GModule::with_dim(&self.group, &fp, self.dim * e, action)
    }

    /// Entries twisted by `x -> x^(p^d)`.
    pub fn frobenius_twist(&self, d: u32) -> GModule {
        let f = self.field.clone();
        let action = self.action.iter().map(|m| m.map_entries(|x| f.frobenius(x, d))).collect();
        GModule {
            group: self.group.clone(),
            field: self.field.clone(),
            dim: self.dim,
            action: Arc::new(action),
            elements: Arc::new(OnceLock::new()),
        }
    }

    /// Elements acting as the identity.
    pub fn kernel(&self) -> Subgroup {
        let mats = self.element_matrices();
        let elems = self.group.elements().filter(|&g| mats[g].is_identity()).collect();
        Subgroup::from_elements(&self.group, elems).expect("kernel of an action is a subgroup")
    }

    pub fn is_faithful(&self) -> bool {
        self.kernel().is_trivial()
    }

    /// Trace of every element, indexed by element.
    pub fn traces(&self) -> Vec<Elem> {
        self.element_matrices().iter().map(Matrix::trace).collect()
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<GModule> {
        if !Arc::ptr_eq(&self.group, &other.group) || self.field != other.field {
            return Err(Error::invalid("direct sum of modules over different groups or fields"));
        }
        let n = self.dim + other.dim;
        let action = self
            .action
            .iter()
            .zip(other.action.iter())
            .map(|(a, b)| {
                let mut m = Matrix::zeros(&self.field, n, n);
                for i in 0..a.rows() {
                    for j in 0..a.cols() {
                        m.set(i, j, a.get(i, j));
                    }
                }
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        m.set(self.dim + i, self.dim + j, b.get(i, j));
                    }
                }
                m
            })
            .collect();
        if self.group.gens().is_empty() {
            return Ok(GModule::trivial(&self.group, &self.field, n));
        }
        GModule::new_unchecked(&self.group, &self.field, action)
    }

    /// Outer tensor product as a module for the direct product `G x H`
    /// built by [`crate::groups::direct_product`] from the two groups.
    pub fn outer_tensor(&self, other: &GModule, product: &GroupRef) -> Result<GModule> {
        let (n1, n2) = (self.dim, other.dim);
        let ng = self.group.gens().len();
        if product.gens().len() != ng + other.group.gens().len() || product.order() != self.group.order() * other.group.order() {
            return Err(Error::invalid("product group does not match the factors"));
        }
        let kron = |a: &Matrix, b: &Matrix| {
            Matrix::from_fn(&self.field, n1 * n2, n1 * n2, |r, c| {
                self.field.mul(a.get(r / n2, c / n2), b.get(r % n2, c % n2))
            })
        };
        let i1 = Matrix::identity(&self.field, n1);
        let i2 = Matrix::identity(&self.field, n2);
        let mut action: Vec<Matrix> = self.action.iter().map(|a| kron(a, &i2)).collect();
        action.extend(other.action.iter().map(|b| kron(&i1, b)));
        if action.is_empty() {
            return Ok(GModule::trivial(product, &self.field, n1 * n2));
        }
        GModule::new(product, &self.field, action)
    }

    /// Dual module with `g` acting by the inverse transpose.
    pub fn dual(&self) -> GModule {
        let g = &self.group;
        let action = g
            .gens()
            .iter()
            .map(|&s| self.element_matrix(g.inv(s)).transpose())
            .collect();
        GModule {
            group: self.group.clone(),
            field: self.field.clone(),
            dim: self.dim,
            action: Arc::new(action),
            elements: Arc::new(OnceLock::new()),
        }
    }
}
