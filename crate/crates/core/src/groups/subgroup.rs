use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::group::{FiniteGroup, GroupRef, MulFn};
use super::hom::GroupHom;
use crate::error::{Error, Result};

/// Bound on the number of subgroups produced by layered enumeration.
pub const SUBGROUP_LIMIT: usize = 20_000;
/// Bound on the group order for exhaustive subgroup enumeration.
pub const ENUMERATION_ORDER_LIMIT: usize = 2000;

/// A subgroup stored as the sorted list of its elements.
#[derive(Clone)]
pub struct Subgroup {
    parent: GroupRef,
    elems: Vec<usize>,
}

impl std::fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subgroup(order {} in {})", self.elems.len(), self.parent.label())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.elems == other.elems
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.elems.hash(state);
    }
}

impl Subgroup {
    /// Subgroup from an element list, verifying closure.
    pub fn from_elements(parent: &GroupRef, mut elems: Vec<usize>) -> Result<Self> {
        elems.sort_unstable();
        elems.dedup();
        let s = Subgroup {
            parent: parent.clone(),
            elems,
        };
        if !s.contains(parent.identity()) {
            return Err(Error::invalid("subset does not contain the identity"));
        }
        for &a in &s.elems {
            if !s.contains(parent.inv(a)) {
                return Err(Error::invalid("subset is not closed under inverses"));
            }
            for &b in &s.elems {
                if !s.contains(parent.mul(a, b)) {
                    return Err(Error::invalid("subset is not closed under multiplication"));
                }
            }
        }
        Ok(s)
    }

    pub(crate) fn from_sorted_unchecked(parent: &GroupRef, elems: Vec<usize>) -> Self {
        Subgroup {
            parent: parent.clone(),
            elems,
        }
    }

    pub fn generated(parent: &GroupRef, gens: &[usize]) -> Self {
        let elems = closure(parent, &[parent.identity()], gens);
        Subgroup {
            parent: parent.clone(),
            elems,
        }
    }

    pub fn whole(parent: &GroupRef) -> Self {
        Subgroup {
            parent: parent.clone(),
            elems: parent.elements().collect(),
        }
    }

    pub fn trivial(parent: &GroupRef) -> Self {
        Subgroup {
            parent: parent.clone(),
            elems: vec![parent.identity()],
        }
    }

    pub fn parent(&self) -> &GroupRef {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.elems.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elems.len() == self.parent.order()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elems.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elems.len() <= other.elems.len() && self.elems.iter().all(|&g| other.contains(g))
    }

    pub fn membership(&self) -> Vec<bool> {
        let mut m = vec![false; self.parent.order()];
        for &g in &self.elems {
            m[g] = true;
        }
        m
    }

    /// A short generating list, chosen greedily by element order.
    pub fn generators(&self) -> Vec<usize> {
        let g = &self.parent;
        let mut cand: Vec<usize> = self.elems.clone();
        cand.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
        let mut gens = Vec::new();
        let mut inside = vec![false; g.order()];
        inside[g.identity()] = true;
        let mut members = vec![g.identity()];
        for x in cand {
            if inside[x] {
                continue;
            }
            gens.push(x);
            extend_closure(g, &mut members, &mut inside, &gens);
            if members.len() == self.elems.len() {
                break;
            }
        }
        gens
    }

    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators();
        gens.extend(other.generators());
        Subgroup::generated(&self.parent, &gens)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let elems = self.elems.iter().copied().filter(|&g| other.contains(g)).collect();
        Subgroup::from_sorted_unchecked(&self.parent, elems)
    }

    pub fn conjugate(&self, g: usize) -> Subgroup {
        let p = &self.parent;
        let mut elems: Vec<usize> = self.elems.iter().map(|&x| p.conj(x, g)).collect();
        elems.sort_unstable();
        Subgroup::from_sorted_unchecked(p, elems)
    }

    /// Normal in the parent group.
    pub fn is_normal(&self) -> bool {
        self.is_normalized_by(self.parent.gens())
    }

    pub fn is_normalized_by(&self, conjugators: &[usize]) -> bool {
        let p = &self.parent;
        let gens = self.generators();
        gens.iter().all(|&x| conjugators.iter().all(|&s| self.contains(p.conj(x, s))))
    }

    /// Lexicographically least element list over all conjugates.
    pub fn conjugacy_key(&self) -> Vec<usize> {
        let p = &self.parent;
        let mut best = self.elems.clone();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        seen.insert(self.elems.clone());
        let mut queue = vec![self.elems.clone()];
        while let Some(cur) = queue.pop() {
            for &s in p.gens() {
                let mut c: Vec<usize> = cur.iter().map(|&x| p.conj(x, s)).collect();
                c.sort_unstable();
                if seen.insert(c.clone()) {
                    if c < best {
                        best = c.clone();
                    }
                    queue.push(c);
                }
            }
        }
        best
    }

    pub fn conjugacy_class(&self) -> Vec<Subgroup> {
        let p = &self.parent;
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(self.elems.clone());
        let mut queue = vec![self.elems.clone()];
        while let Some(cur) = queue.pop() {
            for &s in p.gens() {
                let mut c: Vec<usize> = cur.iter().map(|&x| p.conj(x, s)).collect();
                c.sort_unstable();
                if seen.insert(c.clone()) {
                    queue.push(c);
                }
            }
        }
        seen.into_iter().map(|e| Subgroup::from_sorted_unchecked(p, e)).collect()
    }

    pub fn is_conjugate_to(&self, other: &Subgroup) -> bool {
        self.order() == other.order() && self.conjugacy_key() == other.conjugacy_key()
    }

    /// Smallest subgroup normalized by `conjugators` containing this one.
    pub fn normal_closure_under(&self, conjugators: &[usize]) -> Subgroup {
        normal_closure(&self.parent, &self.generators(), conjugators)
    }

    pub fn normal_closure(&self) -> Subgroup {
        self.normal_closure_under(self.parent.gens())
    }

    /// This subgroup as a group in its own right, with the embedding.
    pub fn as_group(&self, label: impl Into<String>) -> Result<(GroupRef, GroupHom)> {
        let p = self.parent.clone();
        let elems = Arc::new(self.elems.clone());
        let pos: Arc<HashMap<usize, usize>> = Arc::new(elems.iter().enumerate().map(|(i, &g)| (g, i)).collect());
        let gens: Vec<usize> = self.generators().iter().map(|g| pos[g]).collect();
        let identity = pos[&p.identity()];
        let (e2, p2, pos2) = (elems.clone(), p.clone(), pos.clone());
        let mul: MulFn = Arc::new(move |a, b| pos2[&p2.mul(e2[a], e2[b])]);
        let g = FiniteGroup::from_fn(label, elems.len(), identity, gens, mul)?;
        let emb = GroupHom::from_images(&g, &p, elems.to_vec())?;
        Ok((g, emb))
    }

    /// Right cosets `H g` as a map element -> coset id, and one representative per coset.
    pub fn right_cosets(&self) -> (Vec<usize>, Vec<usize>) {
        let p = &self.parent;
        let mut coset = vec![usize::MAX; p.order()];
        let mut reps = Vec::new();
        for g in p.elements() {
            if coset[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &h in &self.elems {
                coset[p.mul(h, g)] = id;
            }
        }
        (coset, reps)
    }

    /// Left cosets `g H`.
    pub fn left_cosets(&self) -> (Vec<usize>, Vec<usize>) {
        let p = &self.parent;
        let mut coset = vec![usize::MAX; p.order()];
        let mut reps = Vec::new();
        for g in p.elements() {
            if coset[g] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(g);
            for &h in &self.elems {
                coset[p.mul(g, h)] = id;
            }
        }
        (coset, reps)
    }
}

fn extend_closure(g: &FiniteGroup, members: &mut Vec<usize>, inside: &mut [bool], gens: &[usize]) {
    let mut i = 0;
    while i < members.len() {
        let x = members[i];
        for &s in gens {
            let y = g.mul(x, s);
            if !inside[y] {
                inside[y] = true;
                members.push(y);
            }
        }
        i += 1;
    }
}

/// Sorted elements of `seed · ⟨gens⟩`; when `seed` lies in `⟨gens⟩` this is
/// the generated subgroup.
pub fn closure(g: &FiniteGroup, seed: &[usize], gens: &[usize]) -> Vec<usize> {
    let mut inside = vec![false; g.order()];
    let mut members = Vec::with_capacity(seed.len());
    for &x in seed {
        if !inside[x] {
            inside[x] = true;
            members.push(x);
        }
    }
    if !inside[g.identity()] {
        inside[g.identity()] = true;
        members.push(g.identity());
    }
    extend_closure(g, &mut members, &mut inside, gens);
    members.sort_unstable();
    members
}

/// Subgroup generated by `gens` and all their conjugates under `conjugators`.
pub fn normal_closure(g: &GroupRef, gens: &[usize], conjugators: &[usize]) -> Subgroup {
    let mut inside = vec![false; g.order()];
    inside[g.identity()] = true;
    let mut members = vec![g.identity()];
    let mut cur_gens: Vec<usize> = Vec::new();
    let mut pending: Vec<usize> = gens.to_vec();
    while let Some(x) = pending.pop() {
        if inside[x] {
            continue;
        }
        cur_gens.push(x);
        extend_closure(g, &mut members, &mut inside, &cur_gens);
        for &c in conjugators {
            for &y in &cur_gens {
                let z = g.conj(y, c);
                if !inside[z] {
                    pending.push(z);
                }
            }
        }
    }
    members.sort_unstable();
    Subgroup::from_sorted_unchecked(g, members)
}

pub fn center(g: &GroupRef) -> Subgroup {
    let elems = g
        .elements()
        .filter(|&x| g.gens().iter().all(|&s| g.mul(x, s) == g.mul(s, x)))
        .collect();
    Subgroup::from_sorted_unchecked(g, elems)
}

pub fn derived_subgroup(g: &GroupRef) -> Subgroup {
    let gens = g.gens();
    let comms: Vec<usize> = gens
        .iter()
        .flat_map(|&a| gens.iter().map(move |&b| (a, b)))
        .map(|(a, b)| g.commutator(a, b))
        .collect();
    normal_closure(g, &comms, gens)
}

/// All subgroups of `within` (a subgroup of its parent), by joining cyclic
/// subgroups layer by layer. Sorted by (order, elements).
pub fn subgroups_of(within: &Subgroup) -> Result<Vec<Subgroup>> {
    let g = within.parent().clone();
    if within.order() > ENUMERATION_ORDER_LIMIT {
        return Err(Error::bound(
            "order for subgroup enumeration",
            ENUMERATION_ORDER_LIMIT as u128,
            within.order() as u128,
        ));
    }
    let mut cyclic: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for &x in within.elements() {
        let c = closure(&g, &[g.identity()], &[x]);
        if seen.insert(c.clone()) {
            cyclic.push((x, c));
        }
    }
    let mut all: Vec<(Vec<usize>, Vec<usize>)> = cyclic.iter().map(|(x, c)| (vec![*x], c.clone())).collect();
    let mut frontier: Vec<usize> = (0..all.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &hi in &frontier {
            let (hgens, helems) = all[hi].clone();
            let member = {
                let mut m = vec![false; g.order()];
                for &e in &helems {
                    m[e] = true;
                }
                m
            };
            for (x, _) in &cyclic {
                if member[*x] {
                    continue;
                }
                let mut gens = hgens.clone();
                gens.push(*x);
                let joined = closure(&g, &helems, &gens);
                if seen.insert(joined.clone()) {
                    all.push((gens, joined));
                    next.push(all.len() - 1);
                    if all.len() > SUBGROUP_LIMIT {
                        return Err(Error::bound("number of subgroups", SUBGROUP_LIMIT as u128, all.len() as u128));
                    }
                }
            }
        }
        frontier = next;
    }
    let mut subs: Vec<Subgroup> = all
        .into_iter()
        .map(|(_, e)| {
            debug_assert_eq!(within.order() % e.len(), 0, "Lagrange");
            Subgroup::from_sorted_unchecked(&g, e)
        })
        .collect();
    subs.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
    Ok(subs)
}

pub fn all_subgroups(g: &GroupRef) -> Result<Vec<Subgroup>> {
    subgroups_of(&Subgroup::whole(g))
}

/// Subgroups of a given index with the count `a_k` and one representative
/// per conjugacy class.
#[derive(Clone, Debug)]
pub struct IndexCensus {
    pub index: usize,
    pub subgroups: Vec<Subgroup>,
    pub conjugacy_representatives: Vec<Subgroup>,
}

impl IndexCensus {
    pub fn count(&self) -> usize {
        self.subgroups.len()
    }

    pub fn class_count(&self) -> usize {
        self.conjugacy_representatives.len()
    }
}

pub fn subgroups_of_index(g: &GroupRef, k: usize) -> Result<IndexCensus> {
    let subgroups: Vec<Subgroup> = if k == 0 || g.order() % k != 0 {
        Vec::new()
    } else if k == 1 {
        vec![Subgroup::whole(g)]
    } else {
        all_subgroups(g)?.into_iter().filter(|s| s.index() == k).collect()
    };
    let mut keys = BTreeSet::new();
    let mut reps = Vec::new();
    for s in &subgroups {
        if keys.insert(s.conjugacy_key()) {
            reps.push(s.clone());
        }
    }
    Ok(IndexCensus {
        index: k,
        subgroups,
        conjugacy_representatives: reps,
    })
}

/// Normal closures of the conjugacy classes, deduplicated and sorted by order.
fn class_closures(g: &GroupRef) -> Vec<Subgroup> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for class in g.conjugacy_classes() {
        if class[0] == g.identity() && class.len() == 1 {
            continue;
        }
        let n = normal_closure(g, &[class[0]], g.gens());
        if seen.insert(n.elements().to_vec()) {
            out.push(n);
        }
    }
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
    out
}

pub fn minimal_normal_subgroups(g: &GroupRef) -> Result<Vec<Subgroup>> {
    const LIMIT: usize = 20_000;
    if g.order() > LIMIT {
        return Err(Error::bound("order for minimal normal subgroups", LIMIT as u128, g.order() as u128));
    }
    let closures = class_closures(g);
    Ok(closures
        .iter()
        .filter(|n| !closures.iter().any(|m| m.order() < n.order() && m.is_subset_of(n)))
        .cloned()
        .collect())
}

/// All normal subgroups (joins of class closures), sorted by order.
pub fn normal_subgroups(g: &GroupRef) -> Result<Vec<Subgroup>> {
    let base = class_closures(g);
    let mut seen: HashSet<Vec<usize>> = base.iter().map(|s| s.elements().to_vec()).collect();
    let mut all = base.clone();
    let mut frontier = base.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for n in &frontier {
            for b in &base {
                if b.is_subset_of(n) {
                    continue;
                }
                let j = n.join(b);
                if seen.insert(j.elements().to_vec()) {
                    next.push(j.clone());
                    all.push(j);
                }
            }
        }
        frontier = next;
    }
    all.push(Subgroup::trivial(g));
    all.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
    Ok(all)
}

/// `N` is minimal normal in the parent, possibly under a larger acting set.
pub fn is_minimal_normal(n: &Subgroup) -> bool {
    if n.is_trivial() || !n.is_normal() {
        return false;
    }
    let g = n.parent();
    n.elements()
        .iter()
        .filter(|&&x| x != g.identity())
        .all(|&x| normal_closure(g, &[x], g.gens()).order() == n.order())
}

pub fn is_simple(g: &GroupRef) -> bool {
    !g.is_trivial()
        && g.conjugacy_classes()
            .iter()
            .filter(|c| c[0] != g.identity())
            .all(|c| normal_closure(g, &[c[0]], g.gens()).is_whole())
}

/// Quotient `G/N` with the projection. Coset `N g` is represented by the
/// least element it contains.
pub fn quotient(g: &GroupRef, n: &Subgroup) -> Result<(GroupRef, GroupHom)> {
    if !Arc::ptr_eq(n.parent(), g) {
        return Err(Error::invalid("subgroup belongs to a different group"));
    }
    if !n.is_normal() {
        return Err(Error::NotNormal);
    }
    let (coset, reps) = n.right_cosets();
    let coset = Arc::new(coset);
    let reps = Arc::new(reps);
    let (g2, c2, r2) = (g.clone(), coset.clone(), reps.clone());
    let mul: MulFn = Arc::new(move |a, b| c2[g2.mul(r2[a], r2[b])]);
    let gens: Vec<usize> = {
        let mut v: Vec<usize> = g.gens().iter().map(|&s| coset[s]).filter(|&c| c != coset[g.identity()]).collect();
        v.dedup();
        v
    };
    let q = FiniteGroup::from_fn(
        format!("{}/{}", g.label(), n.order()),
        reps.len(),
        coset[g.identity()],
        gens,
        mul,
    )?;
    let proj = GroupHom::from_images(g, &q, coset.to_vec())?;
    Ok((q, proj))
}

/// Smallest number of generators, with a witness tuple.
pub fn min_generators(g: &GroupRef) -> Result<(usize, Vec<usize>)> {
    if g.is_trivial() {
        return Ok((0, Vec::new()));
    }
    if let Some(x) = g.elements().find(|&x| g.element_order(x) == g.order()) {
        return Ok((1, vec![x]));
    }
    // Randomised search for a pair first: most groups met here are 2-generated.
    if let Some(t) = random_generating_tuple(g, 2, 400, 0x6e6e) {
        return Ok((2, t));
    }
    if g.order() > ENUMERATION_ORDER_LIMIT {
        return Err(Error::bound(
            "order for exact generator count",
            ENUMERATION_ORDER_LIMIT as u128,
            g.order() as u128,
        ));
    }
    // Level d holds the distinct subgroups generated by d elements; the first
    // entry ranges over class representatives only.
    let mut level: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    for class in g.conjugacy_classes() {
        let x = class[0];
        let c = closure(g, &[g.identity()], &[x]);
        level.entry(c).or_insert_with(|| vec![x]);
    }
    let mut d = 1;
    loop {
        d += 1;
        let mut next: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        let mut keys: Vec<&Vec<usize>> = level.keys().collect();
        keys.sort();
        for h in keys {
            let tuple = &level[h];
            let member: HashSet<usize> = h.iter().copied().collect();
            for x in g.elements() {
                if member.contains(&x) {
                    continue;
                }
                let mut t = tuple.clone();
                t.push(x);
                let j = closure(g, h, &t);
                if j.len() == g.order() {
                    return Ok((d, t));
                }
                next.entry(j).or_insert(t);
            }
        }
        level = next;
    }
}

/// A generating tuple of length `t` found by seeded random search.
pub fn random_generating_tuple(g: &GroupRef, t: usize, attempts: usize, seed: u64) -> Option<Vec<usize>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..attempts {
        let tuple: Vec<usize> = (0..t).map(|_| rng.gen_range(0..g.order())).collect();
        if generates(g, &tuple) {
            return Some(tuple);
        }
    }
    None
}

pub fn generates(g: &GroupRef, tuple: &[usize]) -> bool {
    let mut inside = vec![false; g.order()];
    inside[g.identity()] = true;
    let mut members = vec![g.identity()];
    extend_closure(g, &mut members, &mut inside, tuple);
    members.len() == g.order()
}
