use std::collections::{HashMap, HashSet};
use std::fmt;

use super::constructors::{alternating, direct_power, power_coordinates, power_index, psl27, wreath_with_sym, Wreath};
use super::group::{greedy_generators, GroupRef, FiniteGroup};
use super::hom::GroupHom;
use super::subgroup::{is_simple, quotient, Subgroup};
use crate::error::{Error, Result};

/// Largest order accepted by [`automorphism_group`].
pub const AUT_ORDER_LIMIT: usize = 400;

fn short_generators(g: &GroupRef) -> Vec<usize> {
    let greedy = Subgroup::whole(g).generators();
    if greedy.len() <= g.gens().len() {
        greedy
    } else {
        g.gens().to_vec()
    }
}

/// Candidate images for each generator: same element order and class size.
fn candidates(g: &GroupRef, h: &GroupRef, gens: &[usize]) -> Vec<Vec<usize>> {
    gens.iter()
        .map(|&x| {
            let (o, c) = (g.element_order(x), g.class_size(x));
            h.elements()
                .filter(|&y| h.element_order(y) == o && h.class_size(y) == c)
                .collect()
        })
        .collect()
}

/// Visits every bijective homomorphism `g -> h` given by generator images,
/// pruning partial assignments with the orders of pairwise products.
fn search_isomorphisms(g: &GroupRef, h: &GroupRef, mut visit: impl FnMut(GroupHom) -> bool) {
    if g.order() != h.order() || g.order_profile() != h.order_profile() {
        return;
    }
    let gens = short_generators(g);
    let cand = candidates(g, h, &gens);
    let mut chosen: Vec<usize> = Vec::with_capacity(gens.len());
    fn rec(
        g: &GroupRef,
        h: &GroupRef,
        gens: &[usize],
        cand: &[Vec<usize>],
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(GroupHom) -> bool,
    ) -> bool {
        let j = chosen.len();
        if j == gens.len() {
            if let Some(f) = GroupHom::try_extend(g, gens, chosen, h) {
                if f.is_injective() {
                    return visit(f);
                }
            }
            return true;
        }
        for &y in &cand[j] {
            let ok = (0..j).all(|i| {
                g.element_order(g.mul(gens[i], gens[j])) == h.element_order(h.mul(chosen[i], y))
                    && g.element_order(g.mul(gens[j], gens[i])) == h.element_order(h.mul(y, chosen[i]))
            });
            if !ok {
                continue;
            }
            chosen.push(y);
            let go_on = rec(g, h, gens, cand, chosen, visit);
            chosen.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(g, h, &gens, &cand, &mut chosen, &mut visit);
}

pub fn find_isomorphism(g: &GroupRef, h: &GroupRef) -> Option<GroupHom> {
    let mut found = None;
    search_isomorphisms(g, h, |f| {
        found = Some(f);
        false
    });
    found
}

pub fn are_isomorphic(g: &GroupRef, h: &GroupRef) -> bool {
    find_isomorphism(g, h).is_some()
}

/// `Aut(G)` as a permutation group on the elements of `G`.
#[derive(Clone)]
pub struct AutomorphismGroup {
    pub base: GroupRef,
    pub group: GroupRef,
    pub inner: Subgroup,
    pub out: GroupRef,
    pub to_out: GroupHom,
}

impl fmt::Debug for AutomorphismGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Aut({}) of order {}", self.base.label(), self.group.order())
    }
}

impl AutomorphismGroup {
    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn out_order(&self) -> usize {
        self.out.order()
    }

    /// Image of `x` under automorphism `a`.
    pub fn apply(&self, a: usize, x: usize) -> usize {
        self.group.permutation(a).expect("automorphisms are permutations")[x] as usize
    }

    /// The inner automorphism `x -> g x g^-1`.
    pub fn inner_of(&self, g: usize) -> usize {
        let b = &self.base;
        let perm: Vec<u16> = b.elements().map(|x| b.conj(x, b.inv(g)) as u16).collect();
        self.index_of(&perm).expect("inner automorphisms are automorphisms")
    }

    pub fn index_of(&self, perm: &[u16]) -> Option<usize> {
        self.group.elements().find(|&a| self.group.permutation(a) == Some(perm))
    }
}

pub fn automorphism_group(g: &GroupRef) -> Result<AutomorphismGroup> {
    if g.order() > AUT_ORDER_LIMIT {
        return Err(Error::bound("order for automorphism search", AUT_ORDER_LIMIT as u128, g.order() as u128));
    }
    let mut maps: Vec<Vec<u16>> = Vec::new();
    search_isomorphisms(g, g, |f| {
        maps.push(f.images().iter().map(|&x| x as u16).collect());
        true
    });
    let id: Vec<u16> = g.elements().map(|x| x as u16).collect();
    maps.sort();
    let pos = maps.iter().position(|m| *m == id).expect("identity is an automorphism");
    maps.swap(0, pos);
    for m in &maps {
        let mut seen = vec![false; g.order()];
        if m.iter().any(|&x| std::mem::replace(&mut seen[x as usize], true)) {
            return Err(Error::Internal("automorphism is not bijective".into()));
        }
        for a in g.elements() {
            for &s in g.gens() {
                if m[g.mul(a, s)] as usize != g.mul(m[a] as usize, m[s] as usize) {
                    return Err(Error::Internal("automorphism is not multiplicative".into()));
                }
            }
        }
    }
    let index: HashMap<Vec<u16>, usize> = maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let gens = {
        let compose = |a: usize, b: usize| {
            let c: Vec<u16> = maps[b].iter().map(|&x| maps[a][x as usize]).collect();
            index[&c]
        };
        greedy_generators(maps.len(), 0, &compose)
    };
    let group = FiniteGroup::from_perm_set(format!("Aut({})", g.label()), maps, index, gens)?;
    let inner_elems: HashSet<usize> = {
        let auts = &group;
        let lookup: HashMap<&[u16], usize> = auts
            .elements()
            .map(|a| (auts.permutation(a).expect("permutation group"), a))
            .collect();
        g.elements()
            .map(|h| {
                let perm: Vec<u16> = g.elements().map(|x| g.conj(x, g.inv(h)) as u16).collect();
                lookup[perm.as_slice()]
            })
            .collect()
    };
    let inner = Subgroup::from_elements(&group, inner_elems.into_iter().collect())?;
    let (out, to_out) = quotient(&group, &inner)?;
    Ok(AutomorphismGroup {
        base: g.clone(),
        group,
        inner,
        out,
        to_out,
    })
}

/// The nonabelian simple groups available to the non-abelian constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SimpleGroup {
    A5,
    A6,
    Psl27,
}

impl SimpleGroup {
    pub const ALL: [SimpleGroup; 3] = [SimpleGroup::A5, SimpleGroup::Psl27, SimpleGroup::A6];

    pub fn name(self) -> &'static str {
        match self {
            SimpleGroup::A5 => "A5",
            SimpleGroup::A6 => "A6",
            SimpleGroup::Psl27 => "PSL27",
        }
    }

    pub fn order(self) -> usize {
        match self {
            SimpleGroup::A5 => 60,
            SimpleGroup::A6 => 360,
            SimpleGroup::Psl27 => 168,
        }
    }

    /// Order of the outer automorphism group.
    pub fn out_order(self) -> usize {
        match self {
            SimpleGroup::A5 | SimpleGroup::Psl27 => 2,
            SimpleGroup::A6 => 4,
        }
    }

    pub fn group(self) -> Result<GroupRef> {
        match self {
            SimpleGroup::A5 => alternating(5),
            SimpleGroup::A6 => alternating(6),
            SimpleGroup::Psl27 => psl27(),
        }
    }

    pub fn from_name(s: &str) -> Option<SimpleGroup> {
        SimpleGroup::ALL.into_iter().find(|g| g.name().eq_ignore_ascii_case(s))
    }

    pub fn by_order(n: usize) -> Option<SimpleGroup> {
        SimpleGroup::ALL.into_iter().find(|g| g.order() == n)
    }
}

impl fmt::Display for SimpleGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `Aut(S) ≀ Sym(k)` with its action on `S^k`.
#[derive(Clone, Debug)]
pub struct PowerAutomorphisms {
    pub simple: GroupRef,
    pub aut: AutomorphismGroup,
    pub power: GroupRef,
    pub wreath: Wreath,
    pub k: usize,
    /// Whether the injection into `Aut(S^k)` was checked element by element.
    pub injectivity_verified: bool,
}

impl PowerAutomorphisms {
    pub fn group(&self) -> &GroupRef {
        self.wreath.group()
    }

    /// Image of `s ∈ S^k` under the automorphism attached to `w`: coordinate
    /// `i` is moved to `σ(i)` and twisted by `a_{σ(i)}`.
    pub fn act(&self, w: usize, s: usize) -> usize {
        let (a, sigma) = self.wreath.split(w);
        let n = self.simple.order();
        let c = power_coordinates(n, self.k, s);
        let mut out = vec![0; self.k];
        for i in 0..self.k {
            out[sigma[i]] = self.aut.apply(a[sigma[i]], c[i]);
        }
        power_index(n, &out)
    }

    pub fn action_permutation(&self, w: usize) -> Vec<usize> {
        self.power.elements().map(|s| self.act(w, s)).collect()
    }
}

pub fn aut_of_power_structure(s: &GroupRef, k: usize) -> Result<PowerAutomorphisms> {
    if k == 0 {
        return Err(Error::invalid("power must be at least 1"));
    }
    if s.is_abelian() || !is_simple(s) {
        return Err(Error::NotSimple(s.label().to_string()));
    }
    let aut = automorphism_group(s)?;
    let wreath = wreath_with_sym(&aut.group, k)?;
    let power = direct_power(s, k)?;
    let expected = (aut.order() as u128).pow(k as u32) * (1..=k as u128).product::<u128>();
    if wreath.group().order() as u128 != expected {
        return Err(Error::Internal("wreath product has the wrong order".into()));
    }
    let mut pa = PowerAutomorphisms {
        simple: s.clone(),
        aut,
        power,
        wreath,
        k,
        injectivity_verified: false,
    };
    let w = pa.group().clone();
    let gens = w.gens().to_vec();
    let perms: Vec<Vec<usize>> = gens.iter().map(|&g| pa.action_permutation(g)).collect();
    for p in &perms {
        super::constructors::check_automorphism(&pa.power, p)?;
    }
    // Homomorphism on generator pairs: act(w1 w2) = act(w1) ∘ act(w2).
    for (i, &a) in gens.iter().enumerate() {
        for (j, &b) in gens.iter().enumerate() {
            let lhs = pa.action_permutation(w.mul(a, b));
            let rhs: Vec<usize> = perms[j].iter().map(|&x| perms[i][x]).collect();
            if lhs != rhs {
                return Err(Error::NotHomomorphism("power action is not multiplicative".into()));
            }
        }
    }
    if pa.power.order() <= 10_000 {
        let base: Vec<usize> = pa.power.gens().to_vec();
        let mut seen: HashSet<Vec<usize>> = HashSet::with_capacity(w.order());
        for x in w.elements() {
            let img: Vec<usize> = base.iter().map(|&b| pa.act(x, b)).collect();
            if !seen.insert(img) {
                return Err(Error::Internal("power action is not faithful".into()));
            }
        }
        pa.injectivity_verified = true;
    }
    Ok(pa)
}
