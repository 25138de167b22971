//! Second cohomology through the relation module of a Schreier presentation.
//!
//! With `F` free on a generating set of `G` and `N` the kernel of `F → G`,
//! `H²(G,V) = Hom_G(N_ab, V) / Der(F,V)|_N`. `N` is free on the Schreier
//! generators `w_c x w_{cx}^{-1}` for non-tree edges `(c, x)` of a spanning
//! tree of the Cayley graph.

use crate::error::{Error, Result};
use crate::ffalg::{solve_linear, EchelonBasis, Elem, FqField, LinearSolution, Matrix};
use crate::groups::{min_generators, GroupRef, SchreierTree};
use crate::modrep::GModule;

/// Largest base group handled by [`h2`].
pub const H2_GROUP_LIMIT: usize = 60;
/// Largest module dimension handled by [`h2`].
pub const H2_DIM_LIMIT: usize = 8;

/// A normalized 2-cochain `G × G → V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    order: usize,
    dim: usize,
    values: Vec<Elem>,
}

impl Cocycle {
    pub fn zero(order: usize, dim: usize) -> Self {
        Cocycle {
            order,
            dim,
            values: vec![0; order * order * dim],
        }
    }

    /// Builds a cochain from `f(g, h)`.
    pub fn from_fn(order: usize, dim: usize, mut f: impl FnMut(usize, usize) -> Vec<Elem>) -> Self {
        let mut c = Cocycle::zero(order, dim);
        for g in 0..order {
            for h in 0..order {
                let v = f(g, h);
                c.values[(g * order + h) * dim..][..dim].copy_from_slice(&v);
            }
        }
        c
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, g: usize, h: usize) -> &[Elem] {
        &self.values[(g * self.order + h) * self.dim..][..self.dim]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&x| x == 0)
    }
}

/// Checks normalization and `g·c(h,k) − c(gh,k) + c(g,hk) − c(g,h) = 0`.
pub fn is_cocycle(v: &GModule, c: &Cocycle) -> bool {
    let g = v.group();
    let f = v.field();
    if c.order != g.order() || c.dim != v.dim() {
        return false;
    }
    let e = g.identity();
    if g.elements().any(|x| c.get(e, x).iter().chain(c.get(x, e)).any(|&t| t != 0)) {
        return false;
    }
    let mats = v.element_matrices();
    for a in g.elements() {
        for b in g.elements() {
            let ab = g.mul(a, b);
            for k in g.elements() {
                let lhs = mats[a].mul_vec(c.get(b, k));
                let bk = g.mul(b, k);
                let ok = (0..c.dim).all(|i| {
                    let l = f.add(lhs[i], c.get(a, bk)[i]);
                    let r = f.add(c.get(ab, k)[i], c.get(a, b)[i]);
                    l == r
                });
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// A letter of a free word: generator index and inversion flag.
type Letter = (usize, bool);

/// `Z² = Hom_G(N_ab, V)` and `B² = Der(F,V)|_N`, both as vectors of the
/// values on the Schreier generators, with a basis of a complement of `B²`
/// in `Z²` representing `H²`.
#[derive(Clone, Debug)]
pub struct CocycleSpace {
    pub module: GModule,
    gens: Vec<usize>,
    tree: SchreierTree,
    /// Schreier generator index of each edge `(c, x)`, if not a tree edge.
    edge: Vec<Option<usize>>,
    schreier_count: usize,
    pub z_basis: Vec<Vec<Elem>>,
    pub b_basis: Vec<Vec<Elem>>,
    /// Representatives of a basis of `H²`.
    pub complement: Vec<Vec<Elem>>,
    b_echelon: EchelonBasis,
}

impl CocycleSpace {
    pub fn group(&self) -> &GroupRef {
        self.module.group()
    }

    pub fn field(&self) -> &FqField {
        self.module.field()
    }

    pub fn h2_dim(&self) -> usize {
        self.complement.len()
    }

    pub fn z_dim(&self) -> usize {
        self.z_basis.len()
    }

    pub fn b_dim(&self) -> usize {
        self.b_basis.len()
    }

    /// `|H²(G,V)|`.
    pub fn h2_order(&self) -> u128 {
        (self.field().order() as u128).pow(self.h2_dim() as u32)
    }

    /// The hom vector of the class with the given coordinates.
    pub fn class_vector(&self, coords: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        let mut out = vec![0; self.schreier_count * self.module.dim()];
        for (c, k) in coords.iter().zip(&self.complement) {
            for (o, &x) in out.iter_mut().zip(k) {
                *o = f.add(*o, f.mul(*c, x));
            }
        }
        out
    }

    /// Coordinates in `H²` of a vector of `Z²`.
    pub fn class_coordinates(&self, phi: &[Elem]) -> Result<Vec<Elem>> {
        let h = self.h2_dim();
        if h == 0 {
            return Ok(Vec::new());
        }
        let reduced = self.b_echelon.reduce(phi.to_vec());
        let cols: Vec<Vec<Elem>> = self.complement.iter().map(|k| self.b_echelon.reduce(k.clone())).collect();
        let m = Matrix::from_columns(self.field(), reduced.len(), &cols);
        match solve_linear(&m, &reduced)? {
            LinearSolution::Solutions { particular, .. } => Ok(particular),
            LinearSolution::Inconsistent => Err(Error::NotCocycle),
        }
    }

    /// The normalized cocycle `c(g,h) = φ(w_g w_h w_{gh}^{-1})`.
    pub fn cocycle(&self, phi: &[Elem]) -> Cocycle {
        let g = self.group().clone();
        let f = self.field().clone();
        let m = self.module.dim();
        Cocycle::from_fn(g.order(), m, |a, b| {
            let mut w = self.tree_word(a);
            w.extend(self.tree_word(b));
            w.extend(inverse_word(&self.tree_word(g.mul(a, b))));
            let mut out = vec![0; m];
            for (j, sign) in self.rewrite(&w) {
                for i in 0..m {
                    let x = phi[j * m + i];
                    out[i] = if sign { f.add(out[i], x) } else { f.sub(out[i], x) };
                }
            }
            out
        })
    }

    /// The cocycle representing the class with the given coordinates.
    pub fn class_cocycle(&self, coords: &[Elem]) -> Cocycle {
        self.cocycle(&self.class_vector(coords))
    }

    /// The hom vector induced by a normalized cocycle: the value of each
    /// Schreier generator evaluated in the extension defined by `c`.
    pub fn hom_of_cocycle(&self, c: &Cocycle) -> Result<Vec<Elem>> {
        if !is_cocycle(&self.module, c) {
            return Err(Error::NotCocycle);
        }
        let g = self.group();
        let f = self.field();
        let mats = self.module.element_matrices();
        let m = self.module.dim();
        let mut out = vec![0; self.schreier_count * m];
        for x in g.elements() {
            for s in 0..self.gens.len() {
                let Some(j) = self.edge[x * self.gens.len() + s] else { continue };
                let w = self.schreier_word(x, s);
                // Evaluate the word on the section g ↦ (0, g) of the extension.
                let mut acc: (Vec<Elem>, usize) = (vec![0; m], g.identity());
                for (t, inv) in w {
                    let y = if inv { g.inv(self.gens[t]) } else { self.gens[t] };
                    let lift: Vec<Elem> = if inv {
                        // (0,x)^{-1} = (-x^{-1}·c(x, x^{-1}), x^{-1})
                        let v = mats[y].mul_vec(c.get(self.gens[t], y));
                        v.iter().map(|&e| f.neg(e)).collect()
                    } else {
                        vec![0; m]
                    };
                    let moved = mats[acc.1].mul_vec(&lift);
                    let cc = c.get(acc.1, y);
                    let v: Vec<Elem> = (0..m).map(|i| f.add(f.add(acc.0[i], moved[i]), cc[i])).collect();
                    acc = (v, g.mul(acc.1, y));
                }
                out[j * m..][..m].copy_from_slice(&acc.0);
            }
        }
        Ok(out)
    }

    /// `w_c x_s w_{c x_s}^{-1}`.
    fn schreier_word(&self, c: usize, s: usize) -> Vec<Letter> {
        let mut w = self.tree_word(c);
        w.push((s, false));
        w.extend(inverse_word(&self.tree_word(self.group().mul(c, self.gens[s]))));
        w
    }

    fn tree_word(&self, g: usize) -> Vec<Letter> {
        self.tree.word(g).into_iter().map(|s| (s, false)).collect()
    }

    /// Reidemeister–Schreier rewriting of a word of `N` starting at the
    /// identity coset: the Schreier generators with their signs.
    fn rewrite(&self, w: &[Letter]) -> Vec<(usize, bool)> {
        let g = self.group();
        let r = self.gens.len();
        let mut c = g.identity();
        let mut out = Vec::new();
        for &(s, inv) in w {
            if inv {
                c = g.mul(c, g.inv(self.gens[s]));
                if let Some(j) = self.edge[c * r + s] {
                    out.push((j, false));
                }
            } else {
                if let Some(j) = self.edge[c * r + s] {
                    out.push((j, true));
                }
                c = g.mul(c, self.gens[s]);
            }
        }
        out
    }
}

fn inverse_word(w: &[Letter]) -> Vec<Letter> {
    w.iter().rev().map(|&(s, inv)| (s, !inv)).collect()
}

/// Computes `Z²`, `B²` and a complement representing `H²(G, V)`.
pub fn h2(v: &GModule) -> Result<CocycleSpace> {
    let g = v.group().clone();
    if g.order() > H2_GROUP_LIMIT {
        return Err(Error::bound("group order for H²", H2_GROUP_LIMIT as u128, g.order() as u128));
    }
    if v.dim() > H2_DIM_LIMIT {
        return Err(Error::bound("module dimension for H²", H2_DIM_LIMIT as u128, v.dim() as u128));
    }
    let field = v.field().clone();
    let m = v.dim();
    let (_, gens) = min_generators(&g)?;
    let tree = g
        .schreier_tree(&gens)
        .ok_or_else(|| Error::Internal("minimal generating tuple does not generate".into()))?;
    let r = gens.len();
    let n = g.order();
    let mut edge = vec![None; n * r];
    let mut count = 0;
    for &c in &tree.order {
        for (s, &x) in gens.iter().enumerate() {
            let cx = g.mul(c, x);
            let is_tree = !tree.is_root(cx) && tree.parent[cx] == c && tree.gen[cx] == s;
            if !is_tree {
                edge[c * r + s] = Some(count);
                count += 1;
            }
        }
    }
    let mut space = CocycleSpace {
        module: v.clone(),
        gens: gens.clone(),
        tree,
        edge,
        schreier_count: count,
        z_basis: Vec::new(),
        b_basis: Vec::new(),
        complement: Vec::new(),
        b_echelon: EchelonBasis::new(&field, count * m),
    };
    let mats = v.element_matrices();
    let unknowns = count * m;
    // Schreier generators as (coset, generator) pairs, in index order.
    let mut schreier = vec![(0, 0); count];
    for c in 0..n {
        for s in 0..r {
            if let Some(j) = space.edge[c * r + s] {
                schreier[j] = (c, s);
            }
        }
    }
    // Equivariance: φ(x y x^{-1}) = x·φ(y) for each generator x.
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for (t, &x) in gens.iter().enumerate() {
        for (j, &(c, s)) in schreier.iter().enumerate() {
            let mut w = vec![(t, false)];
            w.extend(space.schreier_word(c, s));
            w.push((t, true));
            let terms = space.rewrite(&w);
            for i in 0..m {
                let mut row = vec![0; unknowns];
                for &(k, sign) in &terms {
                    let e = &mut row[k * m + i];
                    *e = if sign { field.add(*e, 1) } else { field.sub(*e, 1) };
                }
                for l in 0..m {
                    let e = &mut row[j * m + l];
                    *e = field.sub(*e, mats[x].get(i, l));
                }
                rows.push(row);
            }
        }
    }
    if unknowns > 0 {
        let eqs = if rows.is_empty() {
            Matrix::zeros(&field, 1, unknowns)
        } else {
            Matrix::from_rows(&field, &rows)?
        };
        space.z_basis = eqs.nullspace();
        // Restrictions of the derivations δ(x_t) = e_i.
        for t in 0..r {
            for i in 0..m {
                let mut b = vec![0; unknowns];
                for (j, &(c, s)) in schreier.iter().enumerate() {
                    let val = derivation_value(&g, &gens, mats, &field, m, &space.schreier_word(c, s), t, i);
                    b[j * m..][..m].copy_from_slice(&val);
                }
                if eqs.mul_vec(&b).iter().any(|&e| e != 0) {
                    return Err(Error::Internal("a coboundary fails the cocycle equations".into()));
                }
                if space.b_echelon.insert(b.clone()) {
                    space.b_basis.push(b);
                }
            }
        }
        let mut all = space.b_echelon.clone();
        for z in &space.z_basis {
            if all.insert(z.clone()) {
                space.complement.push(z.clone());
            }
        }
        if all.len() != space.z_basis.len() {
            return Err(Error::Internal("coboundaries are not contained in the cocycles".into()));
        }
    }
    Ok(space)
}

/// `δ(w)` for the derivation with `δ(x_t) = e_i` and zero on the other generators.
#[allow(clippy::too_many_arguments)]
fn derivation_value(
    g: &GroupRef,
    gens: &[usize],
    mats: &[Matrix],
    field: &FqField,
    m: usize,
    w: &[Letter],
    t: usize,
    i: usize,
) -> Vec<Elem> {
    let mut out = vec![0; m];
    let mut prefix = g.identity();
    for &(s, inv) in w {
        if inv {
            prefix = g.mul(prefix, g.inv(gens[s]));
            if s == t {
                for (o, k) in out.iter_mut().zip(0..m) {
                    *o = field.sub(*o, mats[prefix].get(k, i));
                }
            }
        } else {
            if s == t {
                for (o, k) in out.iter_mut().zip(0..m) {
                    *o = field.add(*o, mats[prefix].get(k, i));
                }
            }
            prefix = g.mul(prefix, gens[s]);
        }
    }
    out
}
