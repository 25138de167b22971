use super::*;

fn class_sizes(g: &GroupRef) -> Vec<usize> {
    let mut v: Vec<usize> = g.conjugacy_classes().iter().map(Vec::len).collect();
    v.sort_unstable();
    v
}

/// Every subset closed under multiplication, found by brute force.
fn brute_subgroup_count(g: &GroupRef) -> usize {
    let n = g.order();
    assert!(n <= 12);
    (0u32..1 << n)
        .filter(|&mask| {
            let has = |x: usize| mask >> x & 1 == 1;
            has(g.identity())
                && (0..n).filter(|&a| has(a)).all(|a| (0..n).filter(|&b| has(b)).all(|b| has(g.mul(a, b))))
        })
        .count()
}

#[test]
fn small_constructors() {
    let t = cyclic(1).unwrap();
    assert_eq!(t.order(), 1);
    let s3 = symmetric(3).unwrap();
    assert_eq!(s3.order(), 6);
    assert_eq!(s3.class_count(), 3);
    assert_eq!(dihedral(4).unwrap().order(), 8);
    assert_eq!(alternating(5).unwrap().order(), 60);
    assert_eq!(alternating(6).unwrap().order(), 360);
    assert_eq!(symmetric(6).unwrap().order(), 720);
    let q8 = quaternion().unwrap();
    assert_eq!(q8.order(), 8);
    assert_eq!(q8.element_orders().iter().filter(|&&o| o == 4).count(), 6);
    let l = psl27().unwrap();
    assert_eq!(l.order(), 168);
    assert!(is_simple(&l));
    assert_eq!(l.class_count(), 6);
}

#[test]
fn semidirect_inversion_gives_s3() {
    let c3 = cyclic(3).unwrap();
    let c2 = cyclic(2).unwrap();
    let inversion: Vec<usize> = (0..3).map(|x| (3 - x) % 3).collect();
    let sd = semidirect(&c3, &c2, &[inversion]).unwrap();
    assert_eq!(sd.group.order(), 6);
    assert!(are_isomorphic(&sd.group, &symmetric(3).unwrap()));
    let bad: Vec<usize> = vec![0, 2, 0];
    assert!(semidirect(&c3, &c2, &[bad]).is_err());
}

#[test]
fn direct_products() {
    let g = direct_product(&symmetric(3).unwrap(), &cyclic(2).unwrap()).unwrap();
    assert_eq!(g.order(), 12);
    assert!(are_isomorphic(&g, &dihedral(6).unwrap()));
    let p = direct_power(&cyclic(2).unwrap(), 3).unwrap();
    assert_eq!(p.order(), 8);
    assert!(p.is_abelian());
    assert_eq!(p.exponent(), 2);
}

#[test]
fn conjugacy_class_examples() {
    for g in [cyclic(6).unwrap(), direct_power(&cyclic(2).unwrap(), 2).unwrap()] {
        assert!(class_sizes(&g).iter().all(|&s| s == 1));
    }
    assert_eq!(class_sizes(&symmetric(3).unwrap()), vec![1, 2, 3]);
    assert_eq!(class_sizes(&alternating(5).unwrap()), vec![1, 12, 12, 15, 20]);
    // Direct conjugation oracle on S4.
    let s4 = symmetric(4).unwrap();
    for class in s4.conjugacy_classes() {
        let x = class[0];
        let mut orbit: Vec<usize> = s4.elements().map(|g| s4.conj(x, g)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        assert_eq!(&orbit, class);
        assert_eq!(s4.order() % class.len(), 0);
    }
}

#[test]
fn p_regular_classes() {
    let s3 = symmetric(3).unwrap();
    assert_eq!(s3.p_regular_class_count(3), 2);
    assert_eq!(s3.p_regular_class_count(5), 3);
    assert_eq!(alternating(5).unwrap().p_regular_class_count(2), 4);
}

#[test]
fn subgroup_counts_match_brute_force() {
    for g in [
        cyclic(6).unwrap(),
        symmetric(3).unwrap(),
        dihedral(4).unwrap(),
        quaternion().unwrap(),
        direct_power(&cyclic(2).unwrap(), 2).unwrap(),
        alternating(4).unwrap(),
    ] {
        let subs = all_subgroups(&g).unwrap();
        assert_eq!(subs.len(), brute_subgroup_count(&g), "{}", g.label());
        for s in &subs {
            assert_eq!(g.order() % s.order(), 0);
        }
    }
    assert_eq!(all_subgroups(&symmetric(4).unwrap()).unwrap().len(), 30);
    assert_eq!(all_subgroups(&alternating(5).unwrap()).unwrap().len(), 59);
}

#[test]
fn subgroups_of_index_examples() {
    let s3 = symmetric(3).unwrap();
    let one = subgroups_of_index(&s3, 1).unwrap();
    assert_eq!(one.count(), 1);
    assert!(one.subgroups[0].is_whole());
    let c6 = subgroups_of_index(&cyclic(6).unwrap(), 2).unwrap();
    assert_eq!(c6.count(), 1);
    assert_eq!(c6.subgroups[0].order(), 3);
    let v4 = direct_power(&cyclic(2).unwrap(), 2).unwrap();
    let idx2 = subgroups_of_index(&v4, 2).unwrap();
    assert_eq!((idx2.count(), idx2.class_count()), (3, 3));
    let s3_3 = subgroups_of_index(&s3, 3).unwrap();
    assert_eq!((s3_3.count(), s3_3.class_count()), (3, 1));
    assert!(subgroups_of_index(&s3, 4).unwrap().subgroups.is_empty());
}

#[test]
fn generator_counts() {
    assert_eq!(min_generators(&trivial()).unwrap().0, 0);
    assert_eq!(min_generators(&cyclic(6).unwrap()).unwrap().0, 1);
    let (d, w) = min_generators(&symmetric(3).unwrap()).unwrap();
    assert_eq!(d, 2);
    assert!(generates(&symmetric(3).unwrap(), &w));
    assert_eq!(min_generators(&direct_power(&cyclic(2).unwrap(), 3).unwrap()).unwrap().0, 3);
    assert_eq!(min_generators(&direct_power(&cyclic(3).unwrap(), 2).unwrap()).unwrap().0, 2);
    let groups = [cyclic(2).unwrap(), cyclic(3).unwrap(), symmetric(3).unwrap(), direct_power(&cyclic(2).unwrap(), 2).unwrap()];
    for a in &groups {
        for b in &groups {
            let p = direct_product(a, b).unwrap();
            let dp = min_generators(&p).unwrap().0;
            assert!(dp <= min_generators(a).unwrap().0 + min_generators(b).unwrap().0);
        }
    }
}

#[test]
fn automorphism_groups() {
    let c2 = automorphism_group(&cyclic(2).unwrap()).unwrap();
    assert_eq!(c2.order(), 1);
    let s3 = automorphism_group(&symmetric(3).unwrap()).unwrap();
    assert_eq!((s3.order(), s3.out_order()), (6, 1));
    let a5 = alternating(5).unwrap();
    let aut = automorphism_group(&a5).unwrap();
    assert_eq!((aut.order(), aut.out_order(), aut.inner.order()), (120, 2, 60));
    for a in aut.group.elements() {
        let mut seen = vec![false; 60];
        for x in a5.elements() {
            assert!(!std::mem::replace(&mut seen[aut.apply(a, x)], true));
            for y in a5.elements() {
                assert_eq!(aut.apply(a, a5.mul(x, y)), a5.mul(aut.apply(a, x), aut.apply(a, y)));
            }
        }
    }
    let v4 = automorphism_group(&direct_power(&cyclic(2).unwrap(), 2).unwrap()).unwrap();
    assert_eq!(v4.order(), 6);
}

#[test]
fn simple_table_out_orders() {
    for s in SimpleGroup::ALL {
        let g = s.group().unwrap();
        assert_eq!(g.order(), s.order());
        assert!(is_simple(&g));
        let aut = automorphism_group(&g).unwrap();
        assert_eq!(aut.out_order(), s.out_order(), "{s}");
    }
}

#[test]
fn minimal_normal_examples() {
    let a5 = alternating(5).unwrap();
    let m = minimal_normal_subgroups(&a5).unwrap();
    assert_eq!(m.len(), 1);
    assert!(m[0].is_whole());
    let v4 = direct_power(&cyclic(2).unwrap(), 2).unwrap();
    let m = minimal_normal_subgroups(&v4).unwrap();
    assert_eq!(m.len(), 3);
    assert!(m.iter().all(|n| n.order() == 2));
    let a5sq = direct_power(&a5, 2).unwrap();
    let m = minimal_normal_subgroups(&a5sq).unwrap();
    assert_eq!(m.len(), 2);
    for n in &m {
        assert_eq!(n.order(), 60);
        assert!(is_minimal_normal(n));
        let (g, _) = n.as_group("factor").unwrap();
        assert!(are_isomorphic(&g, &a5));
    }
    assert!(minimal_normal_subgroups(&symmetric(4).unwrap()).unwrap()[0].order() == 4);
}

#[test]
fn quotients() {
    let s3 = symmetric(3).unwrap();
    let (q, p) = quotient(&s3, &Subgroup::trivial(&s3)).unwrap();
    assert_eq!(q.order(), 6);
    assert!(p.is_isomorphism());
    let (q, _) = quotient(&s3, &Subgroup::whole(&s3)).unwrap();
    assert_eq!(q.order(), 1);
    let a3 = derived_subgroup(&s3);
    assert_eq!(a3.order(), 3);
    let (q, p) = quotient(&s3, &a3).unwrap();
    assert!(are_isomorphic(&q, &cyclic(2).unwrap()));
    assert_eq!(p.kernel(), a3);
    assert!(p.is_surjective());
    let c2 = subgroups_of_index(&s3, 3).unwrap().subgroups[0].clone();
    assert_eq!(quotient(&s3, &c2).unwrap_err(), crate::Error::NotNormal);
}

#[test]
fn power_automorphisms() {
    let a5 = alternating(5).unwrap();
    let p1 = aut_of_power_structure(&a5, 1).unwrap();
    assert_eq!(p1.group().order(), 120);
    let p2 = aut_of_power_structure(&a5, 2).unwrap();
    assert_eq!(p2.group().order(), 28_800);
    assert!(p2.injectivity_verified);
    assert!(aut_of_power_structure(&cyclic(5).unwrap(), 2).is_err());
}

#[test]
fn wreath_multiplication_rule() {
    let c3 = cyclic(3).unwrap();
    let w = wreath_with_sym(&c3, 2).unwrap();
    let g = w.group();
    assert_eq!(g.order(), 18);
    for x in g.elements() {
        for y in g.elements() {
            let (a, s) = w.split(x);
            let (b, t) = w.split(y);
            let (c, u) = w.split(g.mul(x, y));
            let st: Vec<usize> = t.iter().map(|&i| s[i]).collect();
            assert_eq!(u, st);
            for i in 0..2 {
                let sinv = s.iter().position(|&v| v == i).unwrap();
                assert_eq!(c[i], c3.mul(a[i], b[sinv]));
            }
        }
    }
}

#[test]
fn presentations() {
    let c2 = Presentation::parse("x | x^2").unwrap();
    assert_eq!(coset_enumeration(&c2, 100).unwrap(), 2);
    let s3p = Presentation::parse("x,y | x^2, y^3, (xy)^2").unwrap();
    assert_eq!(s3p.relator_count(), 3);
    assert_eq!(coset_enumeration(&s3p, 1000).unwrap(), 6);
    let s3 = symmetric(3).unwrap();
    let x = s3.elements().find(|&g| s3.element_order(g) == 2).unwrap();
    let y = s3.elements().find(|&g| s3.element_order(g) == 3).unwrap();
    s3p.verify_defines(&s3, &[x, y]).unwrap();
    let a5p = Presentation::parse("a,b | a^2, b^3, (ab)^5").unwrap();
    assert_eq!(coset_enumeration(&a5p, 10_000).unwrap(), 60);
    let q8 = Presentation::parse("i,j | i^4, i^2j^-2, jij^-1i").unwrap();
    assert_eq!(coset_enumeration(&q8, 1000).unwrap(), 8);
    let wrong = Presentation::parse("x,y | x^2, y^3").unwrap();
    assert!(wrong.verify_defines(&s3, &[x, y]).is_err());
}

#[test]
fn homomorphism_extension() {
    let s3 = symmetric(3).unwrap();
    let c2 = cyclic(2).unwrap();
    let sign = GroupHom::extend(&s3, s3.gens(), &[1, 0], &c2);
    // Generators are a transposition and a 3-cycle.
    let sign = sign.unwrap();
    assert_eq!(sign.kernel().order(), 3);
    assert!(GroupHom::extend(&s3, s3.gens(), &[0, 1], &c2).is_err());
}
