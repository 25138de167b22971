use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow};
use proptest::prelude::*;

use super::*;
use crate::ffalg::{FqField, Matrix};
use crate::modrep::meataxe::spin;

/// `q^{n²} ∏_{i=1}^{n} (1 − q^{−i})` in exact rationals.
fn gl_order_product(n: usize, q: u64) -> BigRational {
    let q = BigRational::from_integer(BigInt::from(q));
    let mut acc: BigRational = Pow::pow(&q, n * n);
    for i in 1..=n {
        acc *= BigRational::one() - Pow::pow(&q, i).recip();
    }
    acc
}

fn gl(field: &FqField, n: usize) -> Vec<Matrix> {
    let total = (field.order() as u64).pow((n * n) as u32);
    (0..total)
        .map(|c| decode_matrix(field, n, c))
        .filter(Matrix::is_invertible)
        .collect()
}

/// Irreducible iff every nonzero vector spins to the whole space.
fn irreducible_by_spin(tuple: &[Matrix], field: &FqField, n: usize) -> bool {
    let q = field.order() as u64;
    (1..q.pow(n as u32)).all(|mut c| {
        let v = (0..n)
            .map(|_| {
                let x = (c % q) as u32;
                c /= q;
                x
            })
            .collect();
        spin(tuple, field, n, &[v]).is_full()
    })
}

fn pairs(list: &[Matrix]) -> Vec<Vec<Matrix>> {
    list.iter()
        .flat_map(|a| list.iter().map(move |b| vec![a.clone(), b.clone()]))
        .collect()
}

#[test]
fn gl_order_examples() {
    assert_eq!(gl_order(1, 7), BigUint::from(6u32));
    assert_eq!(gl_order(2, 2), BigUint::from(6u32));
    assert_eq!(gl_order(2, 3), BigUint::from(48u32));
    assert_eq!(GlSpec::new(3, 2).order, BigUint::from(168u32));
}

#[test]
fn orders_match_exhaustive_counts() {
    for (n, p, e) in [(1, 2, 1), (1, 251, 1), (1, 2, 8), (2, 2, 1), (2, 3, 1), (2, 2, 2), (2, 5, 1), (3, 2, 1)] {
        let field = FqField::new(p, e).unwrap();
        let q = field.order() as u64;
        assert_eq!(BigUint::from(exhaustive_gl_count(&field, n).unwrap()), gl_order(n, q), "n={n} q={q}");
    }
    for (n1, n2, p) in [(1, 1, 2), (1, 1, 3), (1, 2, 2), (2, 1, 2), (1, 1, 5)] {
        let field = FqField::prime(p).unwrap();
        let count = exhaustive_parabolic_count(&field, n1, n2).unwrap();
        assert_eq!(BigUint::from(count), parabolic_order(n1, n2, p as u64), "({n1},{n2},{p})");
    }
    assert_eq!(parabolic_order(1, 1, 2), BigUint::from(2u32));
    assert_eq!(parabolic_order(1, 1, 3), BigUint::from(12u32));
    assert_eq!(parabolic_order(1, 2, 2), BigUint::from(24u32));
}

#[test]
fn exhaustive_count_respects_limit() {
    let field = FqField::prime(2).unwrap();
    assert!(exhaustive_gl_count(&field, 5).is_err());
}

#[test]
fn single_matrices_over_f2() {
    let c = tuple_census(1, 2, 2).unwrap();
    assert_eq!(c.total, 6);
    let field = FqField::prime(2).unwrap();
    let by_charpoly = gl(&field, 2).iter().filter(|m| m.trace() == 1).count() as u64;
    assert_eq!(c.irreducible, by_charpoly);
    assert_eq!(c.irreducible, 2);
    assert_eq!(c.iso_classes(), 1);
    assert_eq!(c.classes[0].endo_degree, 2);
}

#[test]
fn pairs_over_f2_match_oracles() {
    let c = tuple_census(2, 2, 2).unwrap();
    let field = FqField::prime(2).unwrap();
    let list = gl(&field, 2);
    let irreducible: Vec<Vec<Matrix>> = pairs(&list)
        .into_iter()
        .filter(|t| irreducible_by_spin(t, &field, 2))
        .collect();
    assert_eq!(c.irreducible, irreducible.len() as u64);
    // Orbit partition by direct conjugation of every irreducible pair.
    let orbits: BTreeSet<Vec<Vec<u64>>> = irreducible
        .iter()
        .map(|t| {
            let mut orbit: Vec<Vec<u64>> = list
                .iter()
                .map(|g| {
                    let gi = g.inverse().unwrap();
                    t.iter().map(|a| encode_matrix(&g.mul(a).mul(&gi))).collect()
                })
                .collect();
            orbit.sort();
            orbit.dedup();
            orbit
        })
        .collect();
    assert_eq!(c.iso_classes(), orbits.len() as u64);
    let reps: BTreeSet<Vec<u64>> = orbits.iter().map(|o| o[0].clone()).collect();
    let census_reps: BTreeSet<Vec<u64>> = c
        .classes
        .iter()
        .map(|cl| cl.rep.iter().map(|r| encode_matrix(&Matrix::from_rows(&field, r).unwrap())).collect())
        .collect();
    assert_eq!(reps, census_reps);
    assert!(c.accounting_holds(6));
    assert!(c.iso_classes() >= 4);
}

#[test]
fn one_dimensional_pairs_over_f3() {
    let c = tuple_census(2, 1, 3).unwrap();
    assert_eq!((c.total, c.irreducible, c.iso_classes()), (4, 4, 4));
    assert!(c.classes.iter().all(|cl| cl.orbit_size == 1 && cl.endo_degree == 1));
}

#[test]
fn burnside_agrees_with_partition() {
    for (d, n, p) in [(1, 2, 2), (2, 2, 2), (1, 2, 3), (2, 2, 3), (1, 3, 2), (2, 1, 5)] {
        let c = tuple_census(d, n, p).unwrap();
        assert_eq!(burnside_class_count(d, n, p).unwrap(), c.iso_classes(), "({d},{n},{p})");
        let order: u64 = gl_order(n, p as u64).try_into().unwrap();
        assert!(c.accounting_holds(order), "({d},{n},{p})");
    }
}

#[test]
fn irreducibility_matches_spin_over_f3() {
    let c = tuple_census(1, 2, 3).unwrap();
    let field = FqField::prime(3).unwrap();
    let spun = gl(&field, 2)
        .iter()
        .filter(|m| irreducible_by_spin(&[(*m).clone()], &field, 2))
        .count() as u64;
    assert_eq!(c.irreducible, spun);
}

#[test]
fn census_budget() {
    assert!(matches!(tuple_census(3, 2, 5), Err(crate::Error::BoundExceeded { .. })));
    assert!(tuple_census(0, 2, 2).is_err());
}

#[test]
fn free_bounds() {
    let b = free_bound_check(&tuple_census(2, 2, 2).unwrap());
    assert_eq!(b.cp_bound, BigRational::one());
    assert_eq!(b.parabolic_bound, BigInt::from(4));
    assert!(b.holds());

    let b = free_bound_check(&tuple_census(2, 2, 3).unwrap());
    assert_eq!(b.cp_bound, BigRational::from_integer(BigInt::from(25)));
    assert!(b.holds());

    let b = free_bound_check(&tuple_census(2, 1, 2).unwrap());
    assert_eq!(b.cp_bound, BigRational::new(BigInt::one(), BigInt::from(8)));
    assert!(b.holds());
    assert_eq!(c_p(3), BigRational::new(BigInt::from(5), BigInt::from(9)));
}

#[test]
fn sylow_bounds() {
    let s = sylow_bound_check(2, 3, 2).unwrap();
    assert_eq!((s.p_part.clone(), s.bound.clone()), (BigUint::from(16u32), BigUint::from(324u32)));
    assert!(s.holds());
    let s = sylow_bound_check(2, 2, 3).unwrap();
    assert_eq!((s.p_part.clone(), s.bound.clone()), (BigUint::from(3u32), BigUint::from(9u32 * 64)));
    assert!(sylow_bound_check(2, 9, 3).is_err());
    assert!(sylow_bound_check(2, 9, 4).is_err());
}

#[test]
fn census_json_shape() {
    let c = tuple_census(1, 2, 2).unwrap();
    let v = serde_json::to_value(&c).unwrap();
    for key in ["d", "n", "p", "total", "irreducible", "classes"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(v["classes"][0]["rep"], serde_json::json!([[[0, 1], [1, 1]]]));
    let back: TupleCensus = serde_json::from_value(v).unwrap();
    assert_eq!(back, c);
}

proptest! {
    #[test]
    fn gl_order_matches_product(n in 1usize..7, q in 2u64..60) {
        prop_assert_eq!(BigRational::from_integer(BigInt::from(gl_order(n, q))), gl_order_product(n, q));
    }

    #[test]
    fn parabolic_matches_product(n1 in 1usize..5, n2 in 1usize..5, q in 2u64..30) {
        let n = n1 + n2;
        let q_r = BigRational::from_integer(BigInt::from(q));
        let mut expected: BigRational = Pow::pow(&q_r, n * n - n1 * n2);
        for i in 1..=n1 {
            expected *= BigRational::one() - Pow::pow(&q_r, i).recip();
        }
        for i in 1..=n2 {
            expected *= BigRational::one() - Pow::pow(&q_r, i).recip();
        }
        prop_assert_eq!(BigRational::from_integer(BigInt::from(parabolic_order(n1, n2, q))), expected);
    }

    #[test]
    fn matrix_codes_round_trip(code in 0u64..81) {
        let field = FqField::prime(3).unwrap();
        prop_assert_eq!(encode_matrix(&decode_matrix(&field, 2, code)), code);
    }

    #[test]
    fn sylow_bound_holds(n in 1usize..6, qi in 0usize..6, pi in 0usize..4) {
        let q = [2u64, 3, 4, 5, 7, 9][qi];
        let p = [2u32, 3, 5, 7][pi];
        prop_assume!(q % p as u64 != 0);
        prop_assert!(sylow_bound_check(n, q, p).unwrap().holds());
    }
}
