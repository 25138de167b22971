use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest order for which a full multiplication table is stored.
pub const TABLE_LIMIT: usize = 1500;
/// Largest group order accepted by the constructors.
pub const MAX_ORDER: usize = 100_000;
const EXHAUSTIVE_ASSOC: usize = 200;
const SAMPLED_ASSOC: usize = 100_000;

pub type MulFn = Arc<dyn Fn(usize, usize) -> usize + Send + Sync>;

#[derive(Clone)]
enum MulRepr {
    Table(Arc<Vec<u32>>),
    Func(MulFn),
}

/// Breadth-first spanning tree of the Cayley graph for a generating list:
/// every non-root `g` equals `parent[g] * gens[gen[g]]`.
#[derive(Clone, Debug)]
pub struct SchreierTree {
    pub gens: Vec<usize>,
    pub order: Vec<usize>,
    pub parent: Vec<usize>,
    pub gen: Vec<usize>,
    pub depth: Vec<usize>,
}

impl SchreierTree {
    pub fn is_root(&self, g: usize) -> bool {
        g == self.order[0]
    }

    /// Generator indices `w` with `g = gens[w0] * gens[w1] * ...`.
    pub fn word(&self, mut g: usize) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.depth[g]);
        while !self.is_root(g) {
            w.push(self.gen[g]);
            g = self.parent[g];
        }
        w.reverse();
        w
    }
}

/// A finite group on the index set `0..order`.
pub struct FiniteGroup {
    label: String,
    order: usize,
    identity: usize,
    inv: Vec<u32>,
    gens: Vec<usize>,
    mul: MulRepr,
    perms: Option<Arc<Vec<Vec<u16>>>>,
    tree: SchreierTree,
    elem_orders: OnceLock<Vec<u32>>,
    classes: OnceLock<(Vec<Vec<usize>>, Vec<u32>)>,
}

pub type GroupRef = Arc<FiniteGroup>;

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.label, self.order)
    }
}

impl FiniteGroup {
    /// Builds and verifies a group from an arbitrary multiplication.
    pub fn from_fn(
        label: impl Into<String>,
        order: usize,
        identity: usize,
        gens: Vec<usize>,
        mul: MulFn,
    ) -> Result<GroupRef> {
        Self::build(label.into(), order, identity, gens, MulRepr::Func(mul), None)
    }

    pub fn from_table(label: impl Into<String>, table: Vec<Vec<usize>>, gens: Option<Vec<usize>>) -> Result<GroupRef> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(Error::invalid("multiplication table must be square and nonempty"));
        }
        if n > MAX_ORDER {
            return Err(Error::bound("group order", MAX_ORDER as u128, n as u128));
        }
        if table.iter().flatten().any(|&x| x >= n) {
            return Err(Error::invalid("table entry out of range"));
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::invalid("table has no identity"))?;
        let flat: Vec<u32> = table.iter().flatten().map(|&x| x as u32).collect();
        let flat = Arc::new(flat);
        let gens = match gens {
            Some(g) => g,
            None => {
                let f2 = flat.clone();
                greedy_generators(n, identity, &move |a, b| f2[a * n + b] as usize)
            }
        };
        Self::build(label.into(), n, identity, gens, MulRepr::Table(flat), None)
    }

    /// Group generated by permutations of `0..degree`, with
    /// `(p*q)(i) = p(q(i))`.
    pub fn from_permutations(label: impl Into<String>, degree: usize, gens: &[Vec<usize>]) -> Result<GroupRef> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::invalid("generator is not a permutation of the stated degree"));
            }
        }
        if degree > u16::MAX as usize {
            return Err(Error::bound("permutation degree", u16::MAX as u128, degree as u128));
        }
        let gens16: Vec<Vec<u16>> = gens.iter().map(|g| g.iter().map(|&x| x as u16).collect()).collect();
        let id: Vec<u16> = (0..degree as u16).collect();
        let mut index: HashMap<Vec<u16>, usize> = HashMap::new();
        let mut elems = vec![id.clone()];
        index.insert(id, 0);
        let mut i = 0;
        while i < elems.len() {
            for g in &gens16 {
                let prod = compose(&elems[i], g);
                if !index.contains_key(&prod) {
                    if elems.len() >= 5040 {
                        return Err(Error::bound("permutation group order", 5040u128, (elems.len() + 1) as u128));
                    }
                    index.insert(prod.clone(), elems.len());
                    elems.push(prod);
                }
            }
            i += 1;
        }
        let gen_idx: Vec<usize> = gens16.iter().map(|g| index[g]).collect();
        Self::from_perm_set(label.into(), elems, index, gen_idx)
    }

    /// `elems` must be closed under composition with identity first.
    pub(crate) fn from_perm_set(
        label: String,
        elems: Vec<Vec<u16>>,
        index: HashMap<Vec<u16>, usize>,
        gens: Vec<usize>,
    ) -> Result<GroupRef> {
        let n = elems.len();
        let elems = Arc::new(elems);
        let index = Arc::new(index);
        let mul: MulFn = {
            let elems = elems.clone();
            Arc::new(move |a, b| index[&compose(&elems[a], &elems[b])])
        };
        Self::build(label, n, 0, gens, MulRepr::Func(mul), Some(elems))
    }

    fn build(
        label: String,
        order: usize,
        identity: usize,
        gens: Vec<usize>,
        mul: MulRepr,
        perms: Option<Arc<Vec<Vec<u16>>>>,
    ) -> Result<GroupRef> {
        if order == 0 {
            return Err(Error::invalid("empty group"));
        }
        if order > MAX_ORDER {
            return Err(Error::bound("group order", MAX_ORDER as u128, order as u128));
        }
        if identity >= order || gens.iter().any(|&g| g >= order) {
            return Err(Error::invalid("element index out of range"));
        }
        let mut mul = mul;
        if order <= TABLE_LIMIT {
            if let MulRepr::Func(f) = &mul {
                let mut t = Vec::with_capacity(order * order);
                for a in 0..order {
                    for b in 0..order {
                        t.push(f(a, b) as u32);
                    }
                }
                mul = MulRepr::Table(Arc::new(t));
            }
        }
        let m = |a: usize, b: usize| match &mul {
            MulRepr::Table(t) => t[a * order + b] as usize,
            MulRepr::Func(f) => f(a, b),
        };
        for g in 0..order {
            if m(identity, g) != g || m(g, identity) != g {
                return Err(Error::invalid(format!("{identity} is not a two-sided identity")));
            }
        }
        let tree = schreier_tree(order, identity, &gens, &m);
        if tree.order.len() != order {
            return Err(Error::invalid(format!(
                "generators reach {} of {order} elements",
                tree.order.len()
            )));
        }
        let gen_inv: Vec<usize> = gens
            .iter()
            .map(|&s| {
                let mut prev = identity;
                let mut x = s;
                let mut steps = 0;
                while x != identity {
                    prev = x;
                    x = m(x, s);
                    steps += 1;
                    if steps > order {
                        return Err(Error::invalid("generator has no finite order"));
                    }
                }
                Ok(if s == identity { identity } else { prev })
            })
            .collect::<Result<_>>()?;
        let mut inv = vec![0u32; order];
        inv[identity] = identity as u32;
        for &g in &tree.order[1..] {
            let p = tree.parent[g];
            inv[g] = m(gen_inv[tree.gen[g]], inv[p] as usize) as u32;
        }
        for g in 0..order {
            if m(g, inv[g] as usize) != identity || m(inv[g] as usize, g) != identity {
                return Err(Error::invalid("operation has no inverses"));
            }
        }
        if order <= EXHAUSTIVE_ASSOC {
            for a in 0..order {
                for b in 0..order {
                    let ab = m(a, b);
                    for c in 0..order {
                        if m(ab, c) != m(a, m(b, c)) {
                            return Err(Error::invalid("operation is not associative"));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a55c);
            for _ in 0..SAMPLED_ASSOC {
                let (a, b, c) = (rng.gen_range(0..order), rng.gen_range(0..order), rng.gen_range(0..order));
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return Err(Error::invalid("operation is not associative"));
                }
            }
        }
        Ok(Arc::new(FiniteGroup {
            label,
            order,
            identity,
            inv,
            gens,
            mul,
            perms,
            tree,
            elem_orders: OnceLock::new(),
            classes: OnceLock::new(),
        }))
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn has_table(&self) -> bool {
        matches!(self.mul, MulRepr::Table(_))
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.mul {
            MulRepr::Table(t) => t[a * self.order + b] as usize,
            MulRepr::Func(f) => f(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, mut n: u64) -> usize {
        let mut base = a;
        let mut acc = self.identity;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn product(&self, elems: impl IntoIterator<Item = usize>) -> usize {
        elems.into_iter().fold(self.identity, |acc, x| self.mul(acc, x))
    }

    pub fn tree(&self) -> &SchreierTree {
        &self.tree
    }

    /// The permutation representing `g`, for groups built from permutations.
    pub fn permutation(&self, g: usize) -> Option<&[u16]> {
        self.perms.as_ref().map(|p| p[g].as_slice())
    }

    pub fn element_orders(&self) -> &[u32] {
        self.elem_orders.get_or_init(|| {
            let mut ord = vec![0u32; self.order];
            for g in 0..self.order {
                if ord[g] != 0 {
                    continue;
                }
                let mut x = g;
                let mut k = 1u32;
                while x != self.identity {
                    x = self.mul(x, g);
                    k += 1;
                }
                ord[g] = k;
            }
            ord
        })
    }

    pub fn element_order(&self, g: usize) -> usize {
        self.element_orders()[g] as usize
    }

    pub fn exponent(&self) -> usize {
        self.element_orders()
            .iter()
            .fold(1usize, |acc, &o| num_integer::lcm(acc, o as usize))
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.element_orders().iter().any(|&o| o as usize == self.order)
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<u32> {
        let mut v = self.element_orders().to_vec();
        v.sort_unstable();
        v
    }

    fn class_data(&self) -> &(Vec<Vec<usize>>, Vec<u32>) {
        self.classes.get_or_init(|| {
            let mut class_of = vec![u32::MAX; self.order];
            let mut classes: Vec<Vec<usize>> = Vec::new();
            for x in 0..self.order {
                if class_of[x] != u32::MAX {
                    continue;
                }
                let id = classes.len() as u32;
                let mut class = vec![x];
                class_of[x] = id;
                let mut i = 0;
                while i < class.len() {
                    let y = class[i];
                    for &s in &self.gens {
                        let z = self.conj(y, s);
                        if class_of[z] == u32::MAX {
                            class_of[z] = id;
                            class.push(z);
                        }
                    }
                    i += 1;
                }
                class.sort_unstable();
                classes.push(class);
            }
            (classes, class_of)
        })
    }

    /// Conjugacy classes, each sorted, ordered by least element.
    pub fn conjugacy_classes(&self) -> &[Vec<usize>] {
        &self.class_data().0
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_data().1[g] as usize
    }

    pub fn class_size(&self, g: usize) -> usize {
        self.conjugacy_classes()[self.class_of(g)].len()
    }

    pub fn class_count(&self) -> usize {
        self.conjugacy_classes().len()
    }

    /// Number of classes whose elements have order prime to `p`.
    pub fn p_regular_class_count(&self, p: u32) -> usize {
        self.conjugacy_classes()
            .iter()
            .filter(|c| self.element_order(c[0]) % p as usize != 0)
            .count()
    }

    /// Schreier tree for an arbitrary generating list; `None` if it does not generate.
    pub fn schreier_tree(&self, gens: &[usize]) -> Option<SchreierTree> {
        let t = schreier_tree(self.order, self.identity, gens, &|a, b| self.mul(a, b));
        (t.order.len() == self.order).then_some(t)
    }

    /// Same group with a different generating list.
    pub fn with_gens(self: &GroupRef, gens: Vec<usize>) -> Result<GroupRef> {
        let tree = self
            .schreier_tree(&gens)
            .ok_or_else(|| Error::invalid("new generators do not generate the group"))?;
        Ok(Arc::new(FiniteGroup {
            label: self.label.clone(),
            order: self.order,
            identity: self.identity,
            inv: self.inv.clone(),
            gens,
            mul: self.mul.clone(),
            perms: self.perms.clone(),
            tree,
            elem_orders: OnceLock::new(),
            classes: OnceLock::new(),
        }))
    }

    pub fn relabel(self: &GroupRef, label: impl Into<String>) -> GroupRef {
        Arc::new(FiniteGroup {
            label: label.into(),
            order: self.order,
            identity: self.identity,
            inv: self.inv.clone(),
            gens: self.gens.clone(),
            mul: self.mul.clone(),
            perms: self.perms.clone(),
            tree: self.tree.clone(),
            elem_orders: OnceLock::new(),
            classes: OnceLock::new(),
        })
    }

    pub fn multiplication_fn(self: &GroupRef) -> MulFn {
        let g = self.clone();
        Arc::new(move |a, b| g.mul(a, b))
    }

    /// Full table as rows (for serialization of small groups).
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order).map(|a| (0..self.order).map(|b| self.mul(a, b)).collect()).collect()
    }
}

pub(crate) fn compose(p: &[u16], q: &[u16]) -> Vec<u16> {
    q.iter().map(|&x| p[x as usize]).collect()
}

pub(crate) fn schreier_tree(
    order: usize,
    identity: usize,
    gens: &[usize],
    m: &dyn Fn(usize, usize) -> usize,
) -> SchreierTree {
    let mut parent = vec![usize::MAX; order];
    let mut gen = vec![usize::MAX; order];
    let mut depth = vec![0; order];
    let mut seen = vec![false; order];
    let mut bfs = Vec::with_capacity(order);
    let mut queue = VecDeque::new();
    seen[identity] = true;
    queue.push_back(identity);
    while let Some(g) = queue.pop_front() {
        bfs.push(g);
        for (i, &s) in gens.iter().enumerate() {
            let h = m(g, s);
            if !seen[h] {
                seen[h] = true;
                parent[h] = g;
                gen[h] = i;
                depth[h] = depth[g] + 1;
                queue.push_back(h);
            }
        }
    }
    SchreierTree {
        gens: gens.to_vec(),
        order: bfs,
        parent,
        gen,
        depth,
    }
}

/// Greedy generating set: repeatedly add the element of largest order
/// outside the current subgroup.
pub(crate) fn greedy_generators(order: usize, identity: usize, m: &dyn Fn(usize, usize) -> usize) -> Vec<usize> {
    let elem_order = |g: usize| {
        let mut x = g;
        let mut k = 1;
        while x != identity {
            x = m(x, g);
            k += 1;
        }
        k
    };
    let mut by_order: Vec<(usize, usize)> = (0..order).map(|g| (elem_order(g), g)).collect();
    by_order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut gens = Vec::new();
    let mut inside = vec![false; order];
    inside[identity] = true;
    let mut members = vec![identity];
    for &(_, g) in &by_order {
        if inside[g] {
            continue;
        }
        gens.push(g);
        // Re-close from scratch under the enlarged generating list.
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &s in &gens {
                let y = m(x, s);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        if members.len() == order {
            break;
        }
    }
    gens
}
