use std::sync::Arc;

use super::group::{FiniteGroup, GroupRef, MulFn, MAX_ORDER};
use crate::error::{Error, Result};

fn check_order(order: u128) -> Result<usize> {
    if order > MAX_ORDER as u128 {
        return Err(Error::bound("group order", MAX_ORDER as u128, order));
    }
    Ok(order as usize)
}

pub fn trivial() -> GroupRef {
    cyclic(1).expect("trivial group")
}

pub fn cyclic(m: usize) -> Result<GroupRef> {
    if m == 0 {
        return Err(Error::invalid("cyclic group of order 0"));
    }
    check_order(m as u128)?;
    let gens = if m == 1 { vec![] } else { vec![1] };
    FiniteGroup::from_fn(format!("C{m}"), m, 0, gens, Arc::new(move |a, b| (a + b) % m))
}

/// Dihedral group of order `2m`; element `r^i s^j` has index `i + m*j`.
pub fn dihedral(m: usize) -> Result<GroupRef> {
    if m == 0 {
        return Err(Error::invalid("dihedral group needs m >= 1"));
    }
    check_order(2 * m as u128)?;
    let mul = move |a: usize, b: usize| {
        let (i, j) = (a % m, a / m);
        let (k, l) = (b % m, b / m);
        let k = if j == 1 { (m - k) % m } else { k };
        (i + k) % m + m * ((j + l) % 2)
    };
    let gens = if m == 1 { vec![1] } else { vec![1, m] };
    FiniteGroup::from_fn(format!("D{}", 2 * m), 2 * m, 0, gens, Arc::new(mul))
}

fn cycle(n: usize, pts: &[usize]) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for w in 0..pts.len() {
        p[pts[w]] = pts[(w + 1) % pts.len()];
    }
    p
}

pub fn symmetric(n: usize) -> Result<GroupRef> {
    if n > 6 {
        return Err(Error::bound("symmetric degree", 6u128, n as u128));
    }
    let n = n.max(1);
    let gens = match n {
        1 => vec![],
        2 => vec![cycle(2, &[0, 1])],
        _ => vec![cycle(n, &[0, 1]), cycle(n, &(0..n).collect::<Vec<_>>())],
    };
    FiniteGroup::from_permutations(format!("S{n}"), n, &gens)
}

pub fn alternating(n: usize) -> Result<GroupRef> {
    if n > 6 {
        return Err(Error::bound("alternating degree", 6u128, n as u128));
    }
    let n = n.max(1);
    let gens = match n {
        1 | 2 => vec![],
        3 => vec![cycle(3, &[0, 1, 2])],
        _ if n % 2 == 1 => vec![cycle(n, &[0, 1, 2]), cycle(n, &(0..n).collect::<Vec<_>>())],
        _ => vec![cycle(n, &[0, 1, 2]), cycle(n, &(1..n).collect::<Vec<_>>())],
    };
    FiniteGroup::from_permutations(format!("A{n}"), n, &gens)
}

pub fn quaternion() -> Result<GroupRef> {
    let i = {
        let mut p = cycle(8, &[0, 1, 2, 3]);
        let q = cycle(8, &[4, 5, 6, 7]);
        for k in 4..8 {
            p[k] = q[k];
        }
        p
    };
    // (1 5 3 7)(2 8 4 6) in zero-based points.
    let mut j: Vec<usize> = (0..8).collect();
    for c in [[0, 4, 2, 6], [1, 7, 3, 5]] {
        for w in 0..4 {
            j[c[w]] = c[(w + 1) % 4];
        }
    }
    FiniteGroup::from_permutations("Q8", 8, &[i, j])
}

/// PSL(2,7) realised as GL(3,2) acting on the seven nonzero vectors of F_2^3.
pub fn psl27() -> Result<GroupRef> {
    // Vectors are the integers 1..=7 (bits); point index = vector - 1.
    let apply = |m: [[u8; 3]; 3], v: usize| -> usize {
        let bits = [v & 1, (v >> 1) & 1, (v >> 2) & 1];
        let mut out = 0;
        for (r, row) in m.iter().enumerate() {
            let s: usize = row.iter().zip(&bits).map(|(&a, &b)| a as usize * b).sum::<usize>() % 2;
            out |= s << r;
        }
        out
    };
    let as_perm = |m: [[u8; 3]; 3]| -> Vec<usize> { (1..8).map(|v| apply(m, v) - 1).collect() };
    let transvection = [[1, 1, 0], [0, 1, 0], [0, 0, 1]];
    // Companion matrix of x^3 + x + 1.
    let companion = [[0, 0, 1], [1, 0, 1], [0, 1, 0]];
    let g = FiniteGroup::from_permutations("PSL27", 7, &[as_perm(transvection), as_perm(companion)])?;
    if g.order() != 168 {
        return Err(Error::Internal(format!("GL(3,2) generated a group of order {}", g.order())));
    }
    Ok(g)
}

/// Direct product with element `(a, b)` at index `a * |H| + b`.
pub fn direct_product(g: &GroupRef, h: &GroupRef) -> Result<GroupRef> {
    let order = check_order(g.order() as u128 * h.order() as u128)?;
    let nh = h.order();
    let mut gens: Vec<usize> = g.gens().iter().map(|&a| a * nh + h.identity()).collect();
    gens.extend(h.gens().iter().map(|&b| g.identity() * nh + b));
    let (g2, h2) = (g.clone(), h.clone());
    let mul: MulFn = Arc::new(move |x, y| g2.mul(x / nh, y / nh) * nh + h2.mul(x % nh, y % nh));
    FiniteGroup::from_fn(
        format!("{}x{}", g.label(), h.label()),
        order,
        g.identity() * nh + h.identity(),
        gens,
        mul,
    )
}

/// `G^k` with coordinate `i` at digit `i` (base `|G|`, least significant first).
pub fn direct_power(g: &GroupRef, k: usize) -> Result<GroupRef> {
    if k == 0 {
        return Ok(trivial());
    }
    let n = g.order();
    let order = check_order((n as u128).pow(k as u32))?;
    let digits = move |mut x: usize| {
        let mut d = Vec::with_capacity(k);
        for _ in 0..k {
            d.push(x % n);
            x /= n;
        }
        d
    };
    let undigits = move |d: &[usize]| d.iter().rev().fold(0, |acc, &x| acc * n + x);
    let id_digits = vec![g.identity(); k];
    let mut gens = Vec::new();
    for i in 0..k {
        for &s in g.gens() {
            let mut d = id_digits.clone();
            d[i] = s;
            gens.push(undigits(&d));
        }
    }
    let g2 = g.clone();
    let mul: MulFn = Arc::new(move |x, y| {
        let (dx, dy) = (digits(x), digits(y));
        let prod: Vec<usize> = dx.iter().zip(&dy).map(|(&a, &b)| g2.mul(a, b)).collect();
        undigits(&prod)
    });
    FiniteGroup::from_fn(format!("{}^{k}", g.label()), order, undigits(&id_digits), gens, mul)
}

/// Splits an element of `direct_power(g, k)` into coordinates.
pub fn power_coordinates(base_order: usize, k: usize, mut x: usize) -> Vec<usize> {
    let mut d = Vec::with_capacity(k);
    for _ in 0..k {
        d.push(x % base_order);
        x /= base_order;
    }
    d
}

pub fn power_index(base_order: usize, coords: &[usize]) -> usize {
    coords.iter().rev().fold(0, |acc, &x| acc * base_order + x)
}

/// Semidirect product `K ⋊ G` where generator `i` of `G` acts on `K` by
/// the permutation `gen_actions[i]`, which must be an automorphism. Element
/// `(k, g)` has index `k + |K| * g`; `(k1,g1)(k2,g2) = (k1·g1(k2), g1 g2)`.
pub fn semidirect(k: &GroupRef, g: &GroupRef, gen_actions: &[Vec<usize>]) -> Result<SemidirectProduct> {
    let nk = k.order();
    let ng = g.order();
    let order = check_order(nk as u128 * ng as u128)?;
    if gen_actions.len() != g.gens().len() {
        return Err(Error::NotHomomorphism("one action per generator of G is required".into()));
    }
    for a in gen_actions {
        check_automorphism(k, a)?;
    }
    // Extend along the Schreier tree: act(g s) = act(g) ∘ act(s).
    let tree = g.tree();
    let mut act: Vec<Vec<u32>> = vec![Vec::new(); ng];
    act[g.identity()] = (0..nk as u32).collect();
    for &x in &tree.order[1..] {
        let p = &act[tree.parent[x]];
        let s = &gen_actions[tree.gen[x]];
        act[x] = s.iter().map(|&y| p[y]).collect();
    }
    for x in 0..ng {
        for (i, &s) in g.gens().iter().enumerate() {
            let xs = g.mul(x, s);
            let composed = gen_actions[i].iter().map(|&y| act[x][y]);
            if !composed.eq(act[xs].iter().copied()) {
                return Err(Error::NotHomomorphism("action does not respect the relations of G".into()));
            }
        }
    }
    let act = Arc::new(act);
    let mut gens: Vec<usize> = k.gens().iter().map(|&a| a + nk * g.identity()).collect();
    gens.extend(g.gens().iter().map(|&b| k.identity() + nk * b));
    let (k2, g2, act2) = (k.clone(), g.clone(), act.clone());
    let mul: MulFn = Arc::new(move |x, y| {
        let (k1, g1) = (x % nk, x / nk);
        let (kk, gg) = (y % nk, y / nk);
        k2.mul(k1, act2[g1][kk] as usize) + nk * g2.mul(g1, gg)
    });
    let group = FiniteGroup::from_fn(
        format!("{}:{}", k.label(), g.label()),
        order,
        k.identity() + nk * g.identity(),
        gens,
        mul,
    )?;
    Ok(SemidirectProduct {
        group,
        normal: k.clone(),
        complement: g.clone(),
        action: act,
    })
}

/// A semidirect product together with its factors and the full action table.
#[derive(Clone, Debug)]
pub struct SemidirectProduct {
    pub group: GroupRef,
    pub normal: GroupRef,
    pub complement: GroupRef,
    pub action: Arc<Vec<Vec<u32>>>,
}

impl SemidirectProduct {
    pub fn element(&self, k: usize, g: usize) -> usize {
        k + self.normal.order() * g
    }

    pub fn split(&self, x: usize) -> (usize, usize) {
        (x % self.normal.order(), x / self.normal.order())
    }

    pub fn act(&self, g: usize, k: usize) -> usize {
        self.action[g][k] as usize
    }
}

/// Checks that a permutation of the elements of `k` is an automorphism.
pub fn check_automorphism(k: &GroupRef, a: &[usize]) -> Result<()> {
    let n = k.order();
    let mut seen = vec![false; n];
    if a.len() != n || a.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
        return Err(Error::NotHomomorphism("map is not a bijection".into()));
    }
    for x in 0..n {
        for &s in k.gens() {
            if a[k.mul(x, s)] != k.mul(a[x], a[s]) {
                return Err(Error::NotHomomorphism("map is not multiplicative".into()));
            }
        }
    }
    Ok(())
}

/// `B^k ⋊ Sym(k)` with `σ` sending coordinate `i` to coordinate `σ(i)`.
pub fn wreath_with_sym(b: &GroupRef, k: usize) -> Result<Wreath> {
    let base = direct_power(b, k)?;
    let top = symmetric(k)?;
    let nb = b.order();
    let actions: Vec<Vec<usize>> = top
        .gens()
        .iter()
        .map(|&s| {
            let sigma = top.permutation(s).expect("symmetric groups carry permutations");
            let mut sigma_inv = vec![0usize; k];
            for (i, &t) in sigma.iter().enumerate() {
                sigma_inv[t as usize] = i;
            }
            (0..base.order())
                .map(|x| {
                    let c = power_coordinates(nb, k, x);
                    let moved: Vec<usize> = (0..k).map(|i| c[sigma_inv[i]]).collect();
                    power_index(nb, &moved)
                })
                .collect()
        })
        .collect();
    let sd = semidirect(&base, &top, &actions)?;
    let group = sd.group.relabel(format!("{}wrS{k}", b.label()));
    Ok(Wreath {
        product: SemidirectProduct { group, ..sd },
        base_factor: b.clone(),
        k,
    })
}

#[derive(Clone, Debug)]
pub struct Wreath {
    pub product: SemidirectProduct,
    pub base_factor: GroupRef,
    pub k: usize,
}

impl Wreath {
    pub fn group(&self) -> &GroupRef {
        &self.product.group
    }

    /// Coordinates `(a_0..a_{k-1})` and the permutation of an element.
    pub fn split(&self, x: usize) -> (Vec<usize>, Vec<usize>) {
        let (b, s) = self.product.split(x);
        let coords = power_coordinates(self.base_factor.order(), self.k, b);
        let perm = self
            .product
            .complement
            .permutation(s)
            .map(|p| p.iter().map(|&v| v as usize).collect())
            .unwrap_or_else(|| (0..self.k).collect());
        (coords, perm)
    }

    pub fn top_index(&self, x: usize) -> usize {
        self.product.split(x).1
    }
}
