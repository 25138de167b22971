use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use super::*;
use crate::ffalg::{Elem, FqField};
use crate::groups::{
    all_subgroups, cyclic, dihedral, direct_power, direct_product, normal_subgroups, quaternion, quotient, symmetric,
    alternating, GroupHom, GroupRef, Subgroup,
};
use crate::modrep::meataxe::spin;
use crate::modrep::GModule;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn surjection(h: &GroupRef, kernel_gens: &[usize]) -> GroupHom {
    let n = Subgroup::generated(h, kernel_gens).normal_closure();
    quotient(h, &n).unwrap().1
}

fn c2xc2() -> GroupRef {
    let c2 = cyclic(2).unwrap();
    direct_product(&c2, &c2).unwrap()
}

#[test]
fn trivial_kernel() {
    let h = cyclic(4).unwrap();
    let l = stable_lattice(&surjection(&h, &[])).unwrap();
    assert_eq!(l.nodes.len(), 1);
    assert!(l.m_counts().is_empty());
    assert_eq!(l.exact_gen_probability(3), BigRational::one());
    let mc = monte_carlo_gen_probability(&l, 2, 1000, 1).unwrap();
    assert_eq!(mc.successes, 1000);
    let pfr = l.pfr_sum_bound(2);
    assert!(pfr.failure.is_zero() && pfr.bound.is_zero());
}

#[test]
fn cyclic_four_onto_two() {
    let h = cyclic(4).unwrap();
    let l = stable_lattice(&surjection(&h, &[2])).unwrap();
    assert_eq!(l.nodes.len(), 2);
    assert_eq!(l.mobius, vec![1, -1]);
    assert_eq!(l.m_counts(), BTreeMap::from([(2, 1)]));
    for k in 1..=10 {
        let expected = BigRational::one() - rat(1, 1 << k);
        assert_eq!(l.exact_gen_probability(k), expected);
        assert_eq!(l.exhaustive_gen_probability(k).unwrap(), expected);
    }
    let pfr = l.pfr_sum_bound(1);
    assert_eq!((pfr.failure.clone(), pfr.bound.clone()), (rat(1, 2), rat(1, 2)));
}

#[test]
fn projection_and_quaternion_lattices() {
    let h = c2xc2();
    let l = stable_lattice(&surjection(&h, &[1])).unwrap();
    assert_eq!(l.nodes.len(), 2);
    let q8 = quaternion().unwrap();
    let c4 = q8.elements().find(|&x| q8.element_order(x) == 4).unwrap();
    let l = stable_lattice(&surjection(&q8, &[c4])).unwrap();
    assert_eq!(l.kernel.order(), 4);
    assert_eq!(l.m_counts(), BTreeMap::from([(2, 1)]));
}

#[test]
fn klein_four_onto_trivial() {
    let h = c2xc2();
    let l = stable_lattice(&GroupHom::trivial(&h, &cyclic(1).unwrap())).unwrap();
    assert_eq!(l.m_counts(), BTreeMap::from([(2, 3)]));
    for k in 1..=9 {
        let expected = BigRational::one() - rat(3, 1 << k) + rat(2, 1 << (2 * k));
        assert_eq!(l.exact_gen_probability(k), expected);
        assert_eq!(l.exhaustive_gen_probability(k).unwrap(), expected);
    }
    assert!(l.independence_holds());
    let pfr = l.pfr_sum_bound(2);
    assert_eq!(pfr.failure, rat(3, 4) - rat(2, 16));
    assert_eq!(pfr.bound, rat(3, 4));
    assert!(pfr.holds());
}

#[test]
fn cyclic_six_independence() {
    let h = cyclic(6).unwrap();
    let l = stable_lattice(&GroupHom::trivial(&h, &cyclic(1).unwrap())).unwrap();
    assert_eq!(l.m_counts(), BTreeMap::from([(2, 1), (3, 1)]));
    assert!(l.independence_holds());
}

fn lattice_cases() -> Vec<GroupHom> {
    let one = cyclic(1).unwrap();
    let mut out = Vec::new();
    for h in [
        symmetric(3).unwrap(),
        dihedral(4).unwrap(),
        alternating(4).unwrap(),
        quaternion().unwrap(),
        symmetric(4).unwrap(),
        c2xc2(),
        cyclic(12).unwrap(),
    ] {
        out.push(GroupHom::trivial(&h, &one));
        for n in normal_subgroups(&h).unwrap() {
            out.push(quotient(&h, &n).unwrap().1);
        }
    }
    out
}

#[test]
fn nodes_match_direct_normality_test() {
    for f in lattice_cases() {
        let l = stable_lattice(&f).unwrap();
        let direct: BTreeSet<Vec<usize>> = all_subgroups(f.domain())
            .unwrap()
            .into_iter()
            .filter(|s| s.is_subset_of(&l.kernel) && s.is_normal())
            .map(|s| s.elements().to_vec())
            .collect();
        let nodes: BTreeSet<Vec<usize>> = l.nodes.iter().map(|s| s.elements().to_vec()).collect();
        assert_eq!(nodes, direct);
        assert!(l.mobius_sums_vanish());
        assert!(l.independence_holds());
        for k in 1..=3 {
            assert!(l.pfr_sum_bound(k).holds());
            if let Ok(p) = l.exhaustive_gen_probability(k) {
                assert_eq!(p, l.exact_gen_probability(k));
            }
        }
    }
}

#[test]
fn monte_carlo_matches_exact() {
    let h = cyclic(4).unwrap();
    let l = stable_lattice(&surjection(&h, &[2])).unwrap();
    let exact = l.exact_gen_probability(2);
    assert_eq!(exact, rat(3, 4));
    let ok = [11u64, 12].iter().any(|&seed| {
        monte_carlo_gen_probability(&l, 2, 100_000, seed)
            .unwrap()
            .within(&exact, 3)
    });
    assert!(ok);
    let a = monte_carlo_gen_probability(&l, 2, 5000, 7).unwrap();
    let b = monte_carlo_gen_probability(&l, 2, 5000, 7).unwrap();
    assert_eq!(a, b);
    assert!(monte_carlo_gen_probability(&l, 2, 0, 7).is_err());
}

#[test]
fn report_json() {
    let h = cyclic(4).unwrap();
    let l = stable_lattice(&surjection(&h, &[2])).unwrap();
    let mc = monte_carlo_gen_probability(&l, 2, 100, 3).unwrap();
    let v = serde_json::to_value(ProbabilityReport::new(&l, 2, Some(&mc))).unwrap();
    assert_eq!(v["exact"], "3/4");
    assert_eq!(v["surjection"]["H"], "C4");
    assert_eq!(v["k"], 2);
    for key in ["trials", "estimate", "stderr", "seed"] {
        assert!(v["mc"].get(key).is_some());
    }
}

#[test]
fn extension_map_examples() {
    let h = cyclic(4).unwrap();
    let map = stable_to_extension_map(&stable_lattice(&surjection(&h, &[2])).unwrap()).unwrap();
    assert_eq!(map.extensions.len(), 1);
    let r = &map.extensions[0].record;
    assert_eq!((r.order(), r.degree, r.split), (4, 2, false));
    assert!(r.verify_minimal());

    let map = stable_to_extension_map(&stable_lattice(&surjection(&c2xc2(), &[1])).unwrap()).unwrap();
    assert!(map.extensions[0].record.split);

    let c2 = cyclic(2).unwrap();
    let h = direct_power(&c2, 3).unwrap();
    for kernel in [vec![1], vec![1, 2]] {
        let map = stable_to_extension_map(&stable_lattice(&surjection(&h, &kernel)).unwrap()).unwrap();
        assert_eq!(map.d, 3);
        assert!(map.multiplicity_holds());
        assert!(map.extensions.iter().all(|e| e.record.verify_minimal()));
        let total: usize = map.buckets.iter().map(|b| b.0).sum();
        assert_eq!(total, map.extensions.len());
    }
    let s4 = symmetric(4).unwrap();
    let one = cyclic(1).unwrap();
    let map = stable_to_extension_map(&stable_lattice(&GroupHom::trivial(&s4, &one)).unwrap()).unwrap();
    assert_eq!(map.extensions.len(), 1);
    assert!(map.multiplicity_holds());
}

/// Maximal left ideals of `F_p[G]` by quotient dimension, from all subspaces
/// of the algebra.
fn maximal_left_ideals(g: &GroupRef, p: u32) -> BTreeMap<usize, u64> {
    let n = g.order();
    let q = p as usize;
    let size = q.pow(n as u32);
    let decode = |mut c: usize| -> Vec<usize> {
        (0..n)
            .map(|_| {
                let x = c % q;
                c /= q;
                x
            })
            .collect()
    };
    let encode = |v: &[usize]| v.iter().rev().fold(0, |acc, &x| acc * q + x);
    let add = |a: usize, b: usize| {
        let (x, y) = (decode(a), decode(b));
        encode(&x.iter().zip(&y).map(|(s, t)| (s + t) % q).collect::<Vec<_>>())
    };
    let close = |mut set: BTreeSet<usize>| {
        loop {
            let items: Vec<usize> = set.iter().copied().collect();
            let before = set.len();
            for &a in &items {
                for &b in &items {
                    set.insert(add(a, b));
                }
            }
            if set.len() == before {
                return set;
            }
        }
    };
    let mut spaces: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    let mut frontier = vec![BTreeSet::from([0usize])];
    spaces.insert(frontier[0].clone());
    while let Some(s) = frontier.pop() {
        for v in 1..size {
            if s.contains(&v) {
                continue;
            }
            let mut t = s.clone();
            t.insert(v);
            let t = close(t);
            if spaces.insert(t.clone()) {
                frontier.push(t);
            }
        }
    }
    let left_mult = |h: usize, v: usize| {
        let x = decode(v);
        let mut y = vec![0; n];
        for (k, &a) in x.iter().enumerate() {
            y[g.mul(h, k)] = (y[g.mul(h, k)] + a) % q;
        }
        encode(&y)
    };
    let ideals: Vec<&BTreeSet<usize>> = spaces
        .iter()
        .filter(|s| s.len() < size && s.iter().all(|&v| g.elements().all(|h| s.contains(&left_mult(h, v)))))
        .collect();
    let mut out = BTreeMap::new();
    for i in &ideals {
        if ideals.iter().any(|j| j.len() > i.len() && i.is_subset(j)) {
            continue;
        }
        let codim = ((size / i.len()) as f64).log(q as f64).round() as usize;
        *out.entry(codim).or_insert(0) += 1;
    }
    out
}

#[test]
fn ideal_census_examples() {
    let c2 = cyclic(2).unwrap();
    let c = ideal_census(&c2, 2, 2).unwrap();
    assert_eq!((c.rows[0].r, c.rows[0].ideals), (1, 1));
    assert!(c.sandwich_holds());
    let c = ideal_census(&c2, 3, 1).unwrap();
    assert_eq!(c.rows[0].ideals, 2);
    let s3 = symmetric(3).unwrap();
    let c = ideal_census(&s3, 2, 2).unwrap();
    assert_eq!(c.rows[0].ideals, 1);
    assert!((1..=4).contains(&c.rows[1].ideals));
    assert!(c.sandwich_holds());
}

#[test]
fn ideal_census_matches_subspace_enumeration() {
    for (g, p) in [
        (cyclic(2).unwrap(), 2),
        (cyclic(2).unwrap(), 3),
        (cyclic(3).unwrap(), 2),
        (cyclic(3).unwrap(), 3),
        (cyclic(4).unwrap(), 2),
        (symmetric(3).unwrap(), 2),
    ] {
        let census = ideal_census(&g, p, g.order()).unwrap();
        let direct = maximal_left_ideals(&g, p);
        let ours: BTreeMap<usize, u64> = census.rows.iter().filter(|r| r.ideals > 0).map(|r| (r.n, r.ideals)).collect();
        assert_eq!(ours, direct, "{} p={p}", g.label());
        assert!(census.sandwich_holds());
    }
}

#[test]
fn ideal_census_limit() {
    let big = cyclic(101).unwrap();
    assert!(ideal_census(&big, 2, 1).is_err());
}

fn exhaustive_module_probability(m: &GModule, k: usize) -> BigRational {
    let q = m.field().order() as usize;
    let dim = m.dim();
    let size = q.pow(dim as u32);
    let total = size.pow(k as u32);
    let vector = |mut c: usize| -> Vec<Elem> {
        (0..dim)
            .map(|_| {
                let x = (c % q) as Elem;
                c /= q;
                x
            })
            .collect()
    };
    let hits = (0..total)
        .filter(|&code| {
            let mut c = code;
            let seeds: Vec<Vec<Elem>> = (0..k)
                .map(|_| {
                    let v = vector(c % size);
                    c /= size;
                    v
                })
                .collect();
            spin(m.action(), m.field(), dim, &seeds).is_full()
        })
        .count();
    BigRational::new(BigInt::from(hits), BigInt::from(total))
}

#[test]
fn module_generation_examples() {
    let f2 = FqField::prime(2).unwrap();
    let one = cyclic(1).unwrap();
    let triv2 = GModule::trivial(&one, &f2, 2);
    assert_eq!(module_gen_probability(&triv2, 2).unwrap(), rat(6, 16));
    assert_eq!(exhaustive_module_probability(&triv2, 2), rat(6, 16));

    let s3 = symmetric(3).unwrap();
    let simple = crate::modrep::simple_modules(&s3, &f2)
        .unwrap()
        .into_iter()
        .find(|s| s.dim() == 2)
        .unwrap();
    assert_eq!(module_gen_probability(&simple.module, 1).unwrap(), rat(3, 4));

    let regular = GModule::regular(&cyclic(2).unwrap(), &f2);
    for k in 1..=4 {
        assert_eq!(module_gen_probability(&regular, k).unwrap(), exhaustive_module_probability(&regular, k));
    }
}

#[test]
fn module_generation_matches_exhaustion() {
    let f2 = FqField::prime(2).unwrap();
    let f3 = FqField::prime(3).unwrap();
    let cases = [
        GModule::regular(&symmetric(3).unwrap(), &f2),
        GModule::regular(&cyclic(3).unwrap(), &f3),
        GModule::regular(&cyclic(4).unwrap(), &f2),
        GModule::trivial(&cyclic(2).unwrap(), &f3, 2),
    ];
    for m in &cases {
        for k in 1..=2 {
            assert_eq!(module_gen_probability(m, k).unwrap(), exhaustive_module_probability(m, k));
        }
    }
}

#[test]
fn regular_generation_lower_bound() {
    for g in [cyclic(2).unwrap(), cyclic(3).unwrap(), symmetric(3).unwrap(), c2xc2()] {
        for p in [2, 3] {
            for k in 1..=3 {
                let b = regular_generation_bound_check(&g, p, k).unwrap();
                assert!(b.holds(), "{} p={p} k={k}", g.label());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lattice_invariants(case in 0usize..40, k in 1usize..4) {
        let cases = lattice_cases();
        let f = &cases[case % cases.len()];
        let l = stable_lattice(f).unwrap();
        prop_assert!(l.mobius_sums_vanish());
        let p = l.exact_gen_probability(k);
        prop_assert!(p >= BigRational::zero() && p <= BigRational::one());
        prop_assert!(l.pfr_sum_bound(k).holds());
        let idx: usize = l.m_counts().keys().copied().max().unwrap_or(1);
        prop_assert!(l.kernel.order() % idx == 0);
    }
}
