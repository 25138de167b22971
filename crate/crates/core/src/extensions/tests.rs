use std::collections::HashSet;

use super::*;
use crate::error::Error;
use crate::ffalg::{Elem, FqField, Matrix};
use crate::groups::{
    alternating, cyclic, direct_product, is_minimal_normal, minimal_normal_subgroups, subgroups_of_index, symmetric,
    trivial, GroupRef, Presentation, SimpleGroup, Subgroup,
};
use crate::modrep::{simple_modules, GModule};

fn fp(p: u32) -> FqField {
    FqField::prime(p).unwrap()
}

fn module(g: &GroupRef, p: u32, dim: usize, trivial_action: bool) -> GModule {
    simple_modules(g, &fp(p))
        .unwrap()
        .into_iter()
        .map(|s| s.module)
        .find(|m| m.dim() == dim && m.action().iter().all(Matrix::is_identity) == trivial_action)
        .expect("module exists")
}

/// `log_q(|Z²| / |B²|)` by enumerating every normalized 2-cochain and
/// every normalized 1-cochain.
fn h2_dim_by_enumeration(v: &GModule) -> usize {
    let g = v.group();
    let n = g.order();
    let m = v.dim();
    let q = v.field().order() as usize;
    let f = v.field();
    let e = g.identity();
    let others: Vec<usize> = g.elements().filter(|&x| x != e).collect();
    let qv = q.pow(m as u32);
    let decode = |mut c: usize| -> Vec<Elem> {
        (0..m)
            .map(|_| {
                let x = (c % q) as Elem;
                c /= q;
                x
            })
            .collect()
    };
    let slots = others.len() * others.len();
    let mut cocycles = 0u64;
    for code in 0..qv.pow(slots as u32) {
        let mut c = code;
        let vals: Vec<usize> = (0..slots)
            .map(|_| {
                let x = c % qv;
                c /= qv;
                x
            })
            .collect();
        let cochain = Cocycle::from_fn(n, m, |a, b| {
            if a == e || b == e {
                return vec![0; m];
            }
            let i = others.iter().position(|&x| x == a).unwrap();
            let j = others.iter().position(|&x| x == b).unwrap();
            decode(vals[i * others.len() + j])
        });
        if is_cocycle(v, &cochain) {
            cocycles += 1;
        }
    }
    let mats = v.element_matrices();
    let mut coboundaries: HashSet<Vec<Elem>> = HashSet::new();
    for code in 0..qv.pow(others.len() as u32) {
        let mut c = code;
        let mut fv = vec![vec![0; m]; n];
        for &x in &others {
            fv[x] = decode(c % qv);
            c /= qv;
        }
        let mut key = Vec::new();
        for a in g.elements() {
            for b in g.elements() {
                let moved = mats[a].mul_vec(&fv[b]);
                for i in 0..m {
                    key.push(f.add(f.sub(moved[i], fv[g.mul(a, b)][i]), fv[a][i]));
                }
            }
        }
        coboundaries.insert(key);
    }
    let ratio = cocycles / coboundaries.len() as u64;
    let mut d = 0;
    let mut r = 1u64;
    while r < ratio {
        r *= q as u64;
        d += 1;
    }
    assert_eq!(r, ratio);
    d
}

fn small_modules() -> Vec<GModule> {
    let c2 = cyclic(2).unwrap();
    let c3 = cyclic(3).unwrap();
    let c4 = cyclic(4).unwrap();
    let v4 = direct_product(&c2, &c2).unwrap();
    vec![
        GModule::trivial(&c2, &fp(2), 1),
        GModule::trivial(&c2, &fp(3), 1),
        module(&c2, 3, 1, false),
        GModule::trivial(&c3, &fp(3), 1),
        GModule::trivial(&c3, &fp(2), 1),
        module(&c3, 2, 2, false),
        GModule::trivial(&c4, &fp(2), 1),
        GModule::trivial(&c2, &fp(2), 2),
        GModule::regular(&c2, &fp(2)),
        GModule::trivial(&v4, &fp(2), 1),
        GModule::trivial(&trivial(), &fp(5), 1),
    ]
}

#[test]
fn h2_matches_cochain_enumeration() {
    for v in small_modules() {
        let space = h2(&v).unwrap();
        assert_eq!(space.h2_dim(), h2_dim_by_enumeration(&v), "{v:?}");
    }
}

#[test]
fn h2_examples() {
    let c2 = cyclic(2).unwrap();
    assert_eq!(h2(&GModule::trivial(&c2, &fp(2), 1)).unwrap().h2_order(), 2);
    assert_eq!(h2(&module(&c2, 3, 1, false)).unwrap().h2_dim(), 0);
    assert_eq!(h2(&GModule::trivial(&trivial(), &fp(2), 3)).unwrap().h2_dim(), 0);
}

/// `H²(C_n, V) ≅ V^G / N V` with `N` the norm element.
#[test]
fn h2_of_cyclic_groups() {
    for n in [2usize, 3, 4, 5, 6] {
        let g = cyclic(n).unwrap();
        for p in [2u32, 3, 5] {
            for s in simple_modules(&g, &fp(p)).unwrap() {
                let v = s.module;
                let mats = v.element_matrices();
                let a = &mats[g.gens()[0]];
                let fixed = a.sub(&Matrix::identity(v.field(), v.dim())).nullity();
                let norm = g.elements().fold(Matrix::zeros(v.field(), v.dim(), v.dim()), |acc, x| acc.add(&mats[x]));
                assert_eq!(h2(&v).unwrap().h2_dim(), fixed - norm.rank(), "C{n} p={p} dim {}", v.dim());
            }
        }
    }
}

#[test]
fn cocycle_round_trip() {
    let s3 = symmetric(3).unwrap();
    for v in [GModule::trivial(&s3, &fp(2), 1), GModule::trivial(&s3, &fp(3), 1), module(&s3, 3, 1, false)]
        .into_iter()
        .chain(small_modules())
    {
        let space = h2(&v).unwrap();
        let h = space.h2_dim();
        let q = v.field().order();
        for code in 0..q.pow(h as u32) {
            let mut c = code;
            let coords: Vec<Elem> = (0..h)
                .map(|_| {
                    let x = c % q;
                    c /= q;
                    x
                })
                .collect();
            let cocycle = space.class_cocycle(&coords);
            assert!(is_cocycle(&v, &cocycle));
            assert_eq!(space.class_coordinates(&space.hom_of_cocycle(&cocycle).unwrap()).unwrap(), coords);
        }
    }
}

#[test]
fn cocycle_extensions_of_c2() {
    let c2 = cyclic(2).unwrap();
    let v = GModule::trivial(&c2, &fp(2), 1);
    let space = h2(&v).unwrap();
    let split = extension_from_cocycle(&v, &Cocycle::zero(2, 1)).unwrap();
    assert!(split.split && !split.total.is_cyclic() && split.order() == 4);
    let c4 = extension_from_cocycle(&v, &space.class_cocycle(&[1])).unwrap();
    assert!(!c4.split && c4.total.is_cyclic());
    assert_eq!(extensions_isomorphic(&split, &split).unwrap(), IsoVerdict::Isomorphic);
    assert_eq!(extensions_isomorphic(&split, &c4).unwrap(), IsoVerdict::NotIsomorphic);
    let mut bad = space.class_cocycle(&[1]);
    bad = Cocycle::from_fn(2, 1, |a, b| if a == 1 && b == 0 { vec![1] } else { bad.get(a, b).to_vec() });
    assert!(matches!(extension_from_cocycle(&v, &bad), Err(Error::NotCocycle)));
}

#[test]
fn c9_classes_are_isomorphic() {
    let c3 = cyclic(3).unwrap();
    let v = GModule::trivial(&c3, &fp(3), 1);
    let space = h2(&v).unwrap();
    let e1 = extension_from_cocycle(&v, &space.class_cocycle(&[1])).unwrap();
    let e2 = extension_from_cocycle(&v, &space.class_cocycle(&[2])).unwrap();
    assert!(e1.total.is_cyclic() && e2.total.is_cyclic());
    assert_eq!(extensions_isomorphic(&e1, &e2).unwrap(), IsoVerdict::Isomorphic);
}

/// Counts records up to isomorphism by pairwise search.
fn count_by_search(records: &[ExtensionRecord]) -> usize {
    let mut reps: Vec<&ExtensionRecord> = Vec::new();
    for r in records {
        if !reps.iter().any(|s| extensions_isomorphic(s, r).unwrap().is_isomorphic()) {
            reps.push(r);
        }
    }
    reps.len()
}

#[test]
fn abelian_minimal_counts() {
    let c2 = cyclic(2).unwrap();
    let e = abelian_minimal_extensions(&c2, 2, 1).unwrap();
    assert_eq!((e.r_k(), e.count(), e.h2_sum()), (1, 2, 2));
    let c3 = cyclic(3).unwrap();
    let e = abelian_minimal_extensions(&c3, 3, 1).unwrap();
    assert_eq!((e.r_k(), e.count(), e.h2_sum()), (1, 2, 3));
    let e = abelian_minimal_extensions(&trivial(), 5, 1).unwrap();
    assert_eq!(e.count(), 1);
    assert!(e.records[0].total.is_cyclic());
}

#[test]
fn abelian_records_match_pairwise_search() {
    let s3 = symmetric(3).unwrap();
    let v4 = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
    for (g, p, k) in [(cyclic(3).unwrap(), 3, 1), (s3.clone(), 2, 1), (s3.clone(), 3, 1), (s3, 2, 2), (v4, 2, 1)] {
        let e = abelian_minimal_extensions(&g, p, k).unwrap();
        assert!(e.chain_holds());
        for r in &e.records {
            assert!(r.minimal && r.verify_minimal());
            assert!(r.kernel.elements().iter().all(|&x| x == r.total.identity() || r.total.element_order(x) == p as usize));
        }
        // Extensions with non-isomorphic modules never match, so search
        // over all cocycle classes of each module.
        let mut all = Vec::new();
        for m in &e.modules {
            let space = h2(&m.module).unwrap();
            let h = space.h2_dim();
            for code in 0..(p as usize).pow(h as u32) {
                let mut c = code;
                let coords: Vec<Elem> = (0..h)
                    .map(|_| {
                        let x = (c % p as usize) as Elem;
                        c /= p as usize;
                        x
                    })
                    .collect();
                all.push(extension_from_cocycle(&m.module, &space.class_cocycle(&coords)).unwrap());
            }
        }
        assert_eq!(count_by_search(&all), e.count(), "{} p={p} k={k}", g.label());
    }
}

#[test]
fn presentation_bounds() {
    let c2 = cyclic(2).unwrap();
    let b = presentation_bound_check(&c2, &Presentation::parse("x | x^2").unwrap(), c2.gens(), 2, 1).unwrap();
    assert_eq!((b.e_min, b.bound), (2, 2));
    let c3 = cyclic(3).unwrap();
    let b = presentation_bound_check(&c3, &Presentation::parse("x | x^3").unwrap(), c3.gens(), 3, 1).unwrap();
    assert_eq!((b.e_min, b.bound), (2, 3));
    let s3 = symmetric(3).unwrap();
    let x = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
    let y = s3.elements().find(|&y| s3.element_order(y) == 3).unwrap();
    let pres = Presentation::parse("x,y | x^2, y^3, (xy)^2").unwrap();
    let b = presentation_bound_check(&s3, &pres, &[x, y], 3, 1).unwrap();
    assert!(b.holds());
    assert_eq!((b.relators, b.r_k, b.bound), (3, 2, 54));
    let wrong = Presentation::parse("x,y | x^2, y^3").unwrap();
    assert!(presentation_bound_check(&s3, &wrong, &[x, y], 3, 1).is_err());
}

#[test]
fn eh_over_c2() {
    let c2 = cyclic(2).unwrap();
    let a5 = alternating(5).unwrap();
    let e = semidirect_eh(&Subgroup::trivial(&c2), &a5).unwrap();
    assert_eq!(e.order(), 7200);
    assert!(e.split && e.minimal);
    assert!(is_minimal_normal(&e.kernel));
    let t = t_map(&e).unwrap();
    assert!(t.transitive && t.stabilizer.is_trivial());
    let whole = semidirect_eh(&Subgroup::whole(&c2), &a5).unwrap();
    assert_eq!(whole.order(), 120);
    assert!(t_map(&whole).unwrap().stabilizer.is_whole());
}

#[test]
fn eh_t_map_of_s3() {
    let s3 = symmetric(3).unwrap();
    let a3 = subgroups_of_index(&s3, 2).unwrap().subgroups.remove(0);
    let e = semidirect_eh(&a3, &alternating(5).unwrap()).unwrap();
    assert_eq!(t_map(&e).unwrap().stabilizer.elements(), a3.elements());
}

#[test]
fn eh_separates_index_two_subgroups_of_v4() {
    let v4 = direct_product(&cyclic(2).unwrap(), &cyclic(2).unwrap()).unwrap();
    let a5 = alternating(5).unwrap();
    let subs = subgroups_of_index(&v4, 2).unwrap().subgroups;
    assert_eq!(subs.len(), 3);
    let records: Vec<ExtensionRecord> = subs.iter().map(|h| semidirect_eh(h, &a5).unwrap()).collect();
    let keys: HashSet<Vec<usize>> = records.iter().map(|r| t_map(r).unwrap().key()).collect();
    assert_eq!(keys.len(), 3);
    for (h, r) in subs.iter().zip(&records) {
        assert_eq!(t_map(r).unwrap().stabilizer.elements(), h.elements());
    }
    for i in 0..3 {
        for j in i + 1..3 {
            assert_eq!(extensions_isomorphic(&records[i], &records[j]).unwrap(), IsoVerdict::NotIsomorphic);
        }
    }
}

#[test]
fn couplings_of_c2_by_a5() {
    let c2 = cyclic(2).unwrap();
    let a5 = alternating(5).unwrap();
    let all = enumerate_couplings(&c2, &a5, 1).unwrap();
    assert_eq!(all.len(), 2);
    let records: Vec<ExtensionRecord> = all.iter().map(|c| extension_from_coupling(c).unwrap()).collect();
    for (c, r) in all.iter().zip(&records) {
        assert_eq!(r.order(), 120);
        assert!(minimal_normal_subgroups(&r.total).unwrap().iter().any(|n| n.elements() == r.kernel.elements()));
        let back = coupling_of(r, &a5).unwrap();
        assert!(c2.elements().all(|g| back.out_element(g) == c.out_element(g)));
    }
    assert_eq!(extensions_isomorphic(&records[0], &records[1]).unwrap(), IsoVerdict::NotIsomorphic);
    let direct = direct_product(&a5, &c2).unwrap();
    let trivial_index = all.iter().position(|c| c2.elements().all(|g| c.out_element(g) == c.out_element(c2.identity()))).unwrap();
    assert!(crate::groups::are_isomorphic(&records[trivial_index].total, &direct));
    assert!(!crate::groups::are_isomorphic(&records[1 - trivial_index].total, &direct));
    assert_eq!(nonabelian_minimal_extension_count(&c2, SimpleGroup::A5, 1).unwrap(), 2);
}

#[test]
fn coupling_fibers() {
    let c2 = cyclic(2).unwrap();
    let a5 = alternating(5).unwrap();
    let f1 = coupling_fiber_bound_check(&c2, &a5, 1).unwrap();
    assert!(f1.holds());
    assert_eq!((f1.bound, f1.fibers.len(), f1.fibers[0].1), (2, 1, 2));
    let f2 = coupling_fiber_bound_check(&c2, &a5, 2).unwrap();
    assert!(f2.holds());
    assert_eq!(f2.bound, 4);
    assert!(f2.fibers.iter().all(|&(_, n)| n >= 1));
}

#[test]
fn generation_bounds() {
    let c2 = cyclic(2).unwrap();
    let c4 = abelian_minimal_extensions(&c2, 2, 1).unwrap().records.into_iter().find(|r| r.total.is_cyclic()).unwrap();
    let b = generation_bound_check(&c4).unwrap();
    assert_eq!((b.d_total, b.bound), (1, 2));
    let s3 = symmetric(3).unwrap();
    let v = module(&s3, 2, 2, false);
    let vs3 = extension_from_cocycle(&v, &Cocycle::zero(6, 2)).unwrap();
    let b = generation_bound_check(&vs3).unwrap();
    assert!(b.holds() && b.bound == 3);
    let a5 = alternating(5).unwrap();
    let chi = enumerate_couplings(&c2, &a5, 1).unwrap().remove(0);
    let b = generation_bound_check(&extension_from_coupling(&chi).unwrap()).unwrap();
    assert!(b.holds() && b.bound == 3);
}

#[test]
fn semidirect_generation() {
    let s3 = symmetric(3).unwrap();
    let c2 = cyclic(2).unwrap();
    let r = semidirect_product_generators_check(&module(&s3, 2, 2, false), &c2).unwrap();
    assert!(r.holds() && r.tuple.len() == 3 && r.d_total <= 3);
    let r = semidirect_product_generators_check(&module(&s3, 3, 1, false), &c2).unwrap();
    assert!(r.holds() && r.d_total <= 3);
    assert!(semidirect_product_generators_check(&module(&s3, 2, 2, false), &trivial()).is_err());
    assert!(semidirect_product_generators_check(&GModule::trivial(&s3, &fp(2), 1), &c2).is_err());
}

#[test]
fn minimal_counts_by_shape() {
    let c2 = cyclic(2).unwrap();
    assert_eq!(minimal_extension_count(&c2, 2).unwrap().total(), 2);
    assert_eq!(minimal_extension_count(&c2, 60).unwrap().total(), 2);
    assert_eq!(minimal_extension_count(&c2, 6).unwrap().total(), 0);
    let census = ExtensionCensus::from_records(&c2, 2, true, &abelian_minimal_extensions(&c2, 2, 1).unwrap().records).unwrap();
    let json = serde_json::to_string(&census).unwrap();
    assert!(json.starts_with("{\"base\":\"C2\",\"degree\":2,\"kind\":\"abelian\",\"count\":2"));
}
