use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::commands::execute;
use super::record::{render, Format, RunConfig};
use crate::error::{Error, Result};
use crate::extensions::{
    abelian_minimal_extension_classes, abelian_minimal_extensions, coupling_fiber_bound_check, enumerate_couplings,
    extension_from_coupling, generation_bound_check, presentation_bound_check, semidirect_eh,
    semidirect_product_generators_check, t_map, ExtensionRecord,
};
use crate::ffalg::{is_prime, FqField, Matrix, MAX_FIELD_ORDER};
use crate::freegrowth::{
    burnside_class_count, exhaustive_gl_count, exhaustive_parabolic_count, free_bound_check, gl_order, parabolic_order,
    sylow_bound_check, tuple_census, EXHAUSTIVE_LIMIT,
};
use crate::groups::{
    alternating, cyclic, dihedral, direct_power, direct_product, is_minimal_normal, normal_subgroups, quaternion,
    quotient, subgroups_of_index, symmetric, GroupHom, GroupRef, Presentation, Subgroup,
};
use crate::modrep::{galois_orbits, product_convolution_check, simple_modules, GModule};
use crate::probgen::{
    ideal_census, monte_carlo_gen_probability, stable_lattice, stable_to_extension_map, StableLattice,
    EXHAUSTIVE_TUPLE_LIMIT,
};

pub const SUITES: [&str; 13] = [
    "order-formulas",
    "free-bounds",
    "brauer",
    "galois-law",
    "convolution",
    "prop52-chain",
    "extension-sandwich",
    "eh-suite",
    "probability",
    "ideal-sandwich",
    "generation-bounds",
    "determinism",
    "all",
];

/// Monte Carlo trials per probability case.
pub const MC_TRIALS: u64 = 100_000;
/// Seeds for the Monte Carlo check and its single rerun.
pub const MC_SEEDS: [u64; 2] = [20_240_601, 20_240_602];

/// One verified statement.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub suite: String,
    pub check: String,
    #[serde(rename = "ref")]
    pub formula: String,
    pub passed: bool,
    pub detail: String,
}

struct Suite {
    name: &'static str,
    checks: Vec<Check>,
}

impl Suite {
    fn new(name: &'static str) -> Self {
        Suite { name, checks: Vec::new() }
    }

    /// Records the outcome of `f`; an error counts as a failure.
    fn check(&mut self, check: impl Into<String>, formula: &str, f: impl FnOnce() -> Result<(bool, String)>) {
        let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
        self.checks.push(Check {
            suite: self.name.to_string(),
            check: check.into(),
            formula: formula.to_string(),
            passed,
            detail,
        });
    }
}

/// Runs a named suite, or every suite for `all`.
pub fn run_suite(name: &str) -> Result<Vec<Check>> {
    let run: fn() -> Vec<Check> = match name {
        "order-formulas" => order_formulas,
        "free-bounds" => free_bounds,
        "brauer" => brauer,
        "galois-law" => galois_law,
        "convolution" => convolution,
        "prop52-chain" => prop52_chain,
        "extension-sandwich" => extension_sandwich,
        "eh-suite" => eh_suite,
        "probability" => probability,
        "ideal-sandwich" => ideal_sandwich,
        "generation-bounds" => generation_bounds,
        "determinism" => determinism,
        "all" => {
            let mut all = Vec::new();
            for s in &SUITES[..SUITES.len() - 1] {
                all.extend(run_suite(s)?);
            }
            return Ok(all);
        }
        other => {
            return Err(Error::invalid(format!(
                "unknown suite `{other}`; available: {}",
                SUITES.join(", ")
            )))
        }
    };
    Ok(run())
}

fn prime_powers(limit: u64) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for p in 2..=limit {
        if !is_prime(p) {
            continue;
        }
        let mut q = p;
        let mut e = 1;
        while q <= limit {
            out.push((p as u32, e));
            q *= p;
            e += 1;
        }
    }
    out.sort_by_key(|&(p, e)| (p as u64).pow(e));
    out
}

const GL_REF: &str = "|GL_n(F_q)| = q^(n^2) prod_{i=1}^n (1 - q^(-i))";
const PARABOLIC_REF: &str = "|P(n1,n2,F_q)| = |GL_n1(F_q)| |GL_n2(F_q)| q^(n1 n2)";

fn order_formulas() -> Vec<Check> {
    let mut s = Suite::new("order-formulas");
    let fields = prime_powers(MAX_FIELD_ORDER as u64);
    for n in 1..=4usize {
        let cases: Vec<(u32, u32)> = fields
            .iter()
            .copied()
            .filter(|&(p, e)| (p as u64).checked_pow(e * (n * n) as u32).map_or(false, |c| c <= EXHAUSTIVE_LIMIT))
            .collect();
        if cases.is_empty() {
            continue;
        }
        s.check(format!("gl_order n={n}, all q with q^(n^2) <= 10^6"), GL_REF, || {
            let bad: Vec<String> = cases
                .par_iter()
                .map(|&(p, e)| -> Result<Option<String>> {
                    let field = FqField::new(p, e)?;
                    let q = field.order() as u64;
                    let count = exhaustive_gl_count(&field, n)?;
                    Ok((gl_order(n, q) != count.into()).then(|| format!("q={q}")))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            Ok((bad.is_empty(), format!("{} fields checked; mismatches: {bad:?}", cases.len())))
        });
    }
    let mut parabolic = Vec::new();
    for n in 2..=4usize {
        for n1 in 1..n {
            for &(p, e) in &fields {
                if (p as u64).checked_pow(e * (n * n) as u32).map_or(false, |c| c <= EXHAUSTIVE_LIMIT) {
                    parabolic.push((n1, n - n1, p, e));
                }
            }
        }
    }
    s.check("parabolic_order, all (n1,n2,q) with q^(n^2) <= 10^6", PARABOLIC_REF, || {
        let bad: Vec<String> = parabolic
            .par_iter()
            .map(|&(n1, n2, p, e)| -> Result<Option<String>> {
                let field = FqField::new(p, e)?;
                let q = field.order() as u64;
                let count = exhaustive_parabolic_count(&field, n1, n2)?;
                Ok((parabolic_order(n1, n2, q) != count.into()).then(|| format!("({n1},{n2},{q})")))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        Ok((bad.is_empty(), format!("{} cases checked; mismatches: {bad:?}", parabolic.len())))
    });
    for (label, formula, got, want) in [
        ("|GL_2(F_2)| = 6", GL_REF, gl_order(2, 2), 6u32),
        ("|GL_2(F_3)| = 48", GL_REF, gl_order(2, 3), 48),
        ("|P(1,1,F_2)| = 2", PARABOLIC_REF, parabolic_order(1, 1, 2), 2),
    ] {
        s.check(label, formula, || Ok((got == want.into(), got.to_string())));
    }
    s.checks
}

const FREE_REF: &str = "r_n(F_d,F_p) >= c_p^d p^(n^2(d-1)), c_p = 1 - 1/p - 1/p^2; \
                        r_n(F_d,F_p) >= |GL_n|^(d-1) - sum_{k=1}^{n-1} |P(k,n-k)|^(d-1)";

fn free_bounds() -> Vec<Check> {
    let mut s = Suite::new("free-bounds");
    let mut cases = vec![(2, 2, 2), (2, 2, 3)];
    cases.extend([2, 3, 5, 7].map(|p| (2, 1, p)));
    cases.push((2, 3, 2));
    for (d, n, p) in cases {
        s.check(format!("census d={d} n={n} p={p}"), FREE_REF, || {
            let census = tuple_census(d, n, p)?;
            let b = free_bound_check(&census);
            let order: u64 = gl_order(n, p as u64)
                .try_into()
                .map_err(|_| Error::Internal("GL order overflow".into()))?;
            let accounting = census.accounting_holds(order);
            Ok((
                b.holds() && accounting,
                format!(
                    "classes={} irreducible={} c_p bound={} parabolic bound={} orbit accounting={accounting}",
                    census.iso_classes(),
                    census.irreducible,
                    b.cp_bound,
                    b.parabolic_bound
                ),
            ))
        });
    }
    for (d, n, p) in [(2, 2, 2), (2, 2, 3), (1, 3, 2), (2, 1, 5)] {
        s.check(
            format!("Burnside count d={d} n={n} p={p}"),
            "classes = |GL|^(-1) sum_g #{irreducible tuples fixed by g}",
            || {
                let partition = tuple_census(d, n, p)?.iso_classes();
                let burnside = burnside_class_count(d, n, p)?;
                Ok((partition == burnside, format!("partition={partition} burnside={burnside}")))
            },
        );
    }
    for (n, q, p) in [(2, 3, 2), (2, 2, 3), (1, 7, 2), (1, 16, 5), (3, 4, 3), (4, 5, 2)] {
        s.check(format!("Sylow bound n={n} q={q} p={p}"), "p-part of |GL_n(F_q)| <= p^n q^(p n)", || {
            let b = sylow_bound_check(n, q, p)?;
            Ok((b.holds(), format!("{} <= {}", b.p_part, b.bound)))
        });
    }
    s.checks
}

fn brauer() -> Vec<Check> {
    let mut s = Suite::new("brauer");
    let mut groups: Vec<Result<GroupRef>> = (1..=12).map(cyclic).collect();
    groups.extend([
        symmetric(3),
        dihedral(4),
        alternating(4),
        symmetric(4),
        alternating(5),
        symmetric(3).and_then(|s3| direct_product(&s3, &cyclic(2)?)),
    ]);
    for g in groups {
        for p in [2, 3, 5] {
            let label = g.as_ref().map_or("?".to_string(), |g| g.label().to_string());
            s.check(
                format!("{label} p={p}"),
                "sum over simple F_p[G]-modules of endomorphism-field degree = number of p-regular classes",
                || {
                    let g = g.as_ref().map_err(Clone::clone)?;
                    let simples = simple_modules(g, &FqField::prime(p)?)?;
                    let total: usize = simples.iter().map(|r| r.endo_degree).sum();
                    let classes = g.p_regular_class_count(p);
                    Ok((total == classes, format!("{total} vs {classes}")))
                },
            );
        }
    }
    s.checks
}

fn suite_groups() -> Vec<Result<GroupRef>> {
    vec![
        cyclic(3),
        cyclic(5),
        cyclic(7),
        symmetric(3),
        dihedral(4),
        alternating(4),
        symmetric(4),
        alternating(5),
        symmetric(3).and_then(|s3| direct_product(&s3, &cyclic(2)?)),
    ]
}

fn galois_law() -> Vec<Check> {
    let mut s = Suite::new("galois-law");
    for g in suite_groups() {
        for p in [2, 3, 5] {
            let label = g.as_ref().map_or("?".to_string(), |g| g.label().to_string());
            s.check(
                format!("{label} p={p} d<=2"),
                "dim_{F_p} Phi(orbit) = |orbit| dim_{F_(p^d)} V for every Frobenius orbit of absolutely simple modules",
                || {
                    let g = g.as_ref().map_err(Clone::clone)?;
                    let desc = galois_orbits(g, p, 2)?;
                    let orbits: usize = desc.levels.iter().map(|l| l.orbits.len()).sum();
                    Ok((desc.dimension_law_holds(), format!("{orbits} orbits")))
                },
            );
        }
    }
    s.check(
        "A5 over F_2: two conjugate 2-dim F_4-modules fuse into one 4-dim F_2-simple",
        "Phi(orbit of size 2, dim 2) has F_2-dimension 4",
        || {
            let desc = galois_orbits(&alternating(5)?, 2, 2)?;
            let level = &desc.levels[1];
            let fused: Vec<_> = level.orbits.iter().filter(|o| o.len() == 2).collect();
            let ok = fused.len() == 1
                && fused[0].member_dim == 2
                && desc.base[fused[0].descent].dim() == 4
                && desc.dimension_law_holds();
            Ok((ok, format!("{} fused orbits", fused.len())))
        },
    );
    s.checks
}

fn convolution() -> Vec<Check> {
    let mut s = Suite::new("convolution");
    for (a, b, p) in [("S3", "C2", 3), ("S3", "S3", 2)] {
        s.check(
            format!("{a} x {b} over F_{p}, n <= 4"),
            "r*_n(G1 x G2) = sum_{n1 n2 = n} r*_n1(G1) r*_n2(G2)",
            || {
                let g1 = symmetric(3)?;
                let g2 = if b == "C2" { cyclic(2)? } else { symmetric(3)? };
                let c = product_convolution_check(&g1, &g2, &FqField::prime(p)?, 4)?;
                let rows: Vec<String> = c.rows.iter().map(|r| format!("{}:{}={}", r.n, r.direct, r.convolution)).collect();
                Ok((c.holds(), rows.join(" ")))
            },
        );
    }
    s.checks
}

const CHAIN_REF: &str = "r_k(G,F_p) <= e^min_{p^k}(G) <= sum_{V in Irr_k} |H^2(G,V)|";

fn prop52_chain() -> Vec<Check> {
    let mut s = Suite::new("prop52-chain");
    for (name, p, k) in [("C2", 2, 1), ("C3", 3, 1), ("S3", 2, 1), ("S3", 2, 2), ("S3", 3, 1)] {
        s.check(format!("{name} p={p} k={k}"), CHAIN_REF, || {
            let g = super::spec::parse_group(name)?;
            let ext = abelian_minimal_extension_classes(&g, p, k)?;
            Ok((
                ext.chain_holds(),
                format!("{} <= {} <= {}", ext.r_k(), ext.count(), ext.h2_sum()),
            ))
        });
    }
    s.check("e^min_2(C2) = 2", CHAIN_REF, || {
        let n = abelian_minimal_extension_classes(&cyclic(2)?, 2, 1)?.count();
        Ok((n == 2, n.to_string()))
    });
    let s3_pres = "x,y | x^2, y^3, (xy)^2";
    for (name, pres, p, k) in [
        ("C2", "x | x^2", 2, 1),
        ("C3", "x | x^3", 3, 1),
        ("S3", s3_pres, 2, 1),
        ("S3", s3_pres, 2, 2),
        ("S3", s3_pres, 3, 1),
    ] {
        s.check(
            format!("{name} = <{pres}> p={p} k={k}"),
            "e^min_{p^k}(G) <= p^(r k) r_k(G,F_p) for a presentation with r relators",
            || {
                let g = super::spec::parse_group(name)?;
                let images: Vec<usize> = if name == "S3" {
                    let x = g.elements().find(|&x| g.element_order(x) == 2).expect("involution");
                    let y = g.elements().find(|&y| g.element_order(y) == 3).expect("3-cycle");
                    vec![x, y]
                } else {
                    g.gens().to_vec()
                };
                let b = presentation_bound_check(&g, &Presentation::parse(pres)?, &images, p, k)?;
                Ok((b.holds(), format!("{} <= {}", b.e_min, b.bound)))
            },
        );
    }
    s.checks
}

/// Surjections `H → H/N` for a few small groups and all their normal `N`.
fn suite_surjections() -> Result<Vec<GroupHom>> {
    let c2 = cyclic(2)?;
    let mut out = Vec::new();
    for h in [
        cyclic(4)?,
        cyclic(6)?,
        direct_power(&c2, 2)?,
        direct_power(&c2, 3)?,
        quaternion()?,
        symmetric(3)?,
        dihedral(4)?,
        alternating(4)?,
        symmetric(4)?,
    ] {
        for n in normal_subgroups(&h)? {
            out.push(quotient(&h, &n)?.1);
        }
    }
    Ok(out)
}

fn surjection_label(f: &GroupHom) -> String {
    format!("{} -> {}", f.domain().label(), f.codomain().label())
}

fn extension_sandwich() -> Vec<Check> {
    let mut s = Suite::new("extension-sandwich");
    match suite_surjections() {
        Ok(list) => {
            for f in list {
                s.check(
                    surjection_label(&f),
                    "each isomorphism class of 1 -> R/M -> H/M -> G -> 1 arises from at most [R:M]^d(H) maximal H-stable M",
                    || {
                        let map = stable_to_extension_map(&stable_lattice(&f)?)?;
                        let minimal = map.extensions.iter().all(|e| e.record.verify_minimal());
                        let sizes: Vec<String> = map.buckets.iter().map(|(n, i)| format!("{n}<={i}^{}", map.d)).collect();
                        Ok((map.multiplicity_holds() && minimal, sizes.join(" ")))
                    },
                );
            }
        }
        Err(e) => s.check("suite surjections", "", || Err(e)),
    }
    s.checks
}

fn eh_suite() -> Vec<Check> {
    let mut s = Suite::new("eh-suite");
    const EH_REF: &str = "E_H = S^(G/H) x| G has minimal normal kernel S^(G/H) and t_(S,k)(E_H) = [H]";
    for name in ["C2", "S3"] {
        s.check(format!("E_H over {name} with S = A5, all H up to conjugacy"), EH_REF, || {
            let g = super::spec::parse_group(name)?;
            let a5 = alternating(5)?;
            let mut subs: Vec<Subgroup> = Vec::new();
            for h in crate::groups::all_subgroups(&g)? {
                if h.index() <= 2 && !subs.iter().any(|x| x.is_conjugate_to(&h)) {
                    subs.push(h);
                }
            }
            let mut ok = true;
            for h in &subs {
                let e = semidirect_eh(h, &a5)?;
                let t = t_map(&e)?;
                ok &= is_minimal_normal(&e.kernel) && t.stabilizer.is_conjugate_to(h);
            }
            Ok((ok, format!("{} subgroups", subs.len())))
        });
    }
    s.check(
        "three index-2 subgroups of C2 x C2 give three t-separated records",
        EH_REF,
        || {
            let v4 = direct_power(&cyclic(2)?, 2)?;
            let a5 = alternating(5)?;
            let subs = subgroups_of_index(&v4, 2)?.subgroups;
            let records: Vec<ExtensionRecord> = subs.iter().map(|h| semidirect_eh(h, &a5)).collect::<Result<_>>()?;
            let keys: HashSet<Vec<usize>> = records.iter().map(|r| t_map(r).map(|t| t.key())).collect::<Result<_>>()?;
            let minimal = records.iter().all(|r| is_minimal_normal(&r.kernel));
            Ok((subs.len() == 3 && keys.len() == 3 && minimal, format!("{} distinct t-classes", keys.len())))
        },
    );
    for k in [1, 2] {
        s.check(
            format!("coupling fibers G = C2, S = A5, k = {k}"),
            "each fiber of the coupling map has size <= |Out(S)|^(k d(G))",
            || {
                let b = coupling_fiber_bound_check(&cyclic(2)?, &alternating(5)?, k)?;
                let sizes: Vec<String> = b.fibers.iter().map(|f| f.1.to_string()).collect();
                Ok((b.holds(), format!("sizes [{}] <= {}", sizes.join(","), b.bound)))
            },
        );
    }
    s.checks
}

const PROB_REF: &str = "P(k) = sum_N mu(N,R) [R:N]^(-k) over subgroups N of R normal in H";

fn mc_agrees(l: &StableLattice, k: usize) -> Result<(bool, String)> {
    let exact = l.exact_gen_probability(k);
    let mut detail = Vec::new();
    for seed in MC_SEEDS {
        let mc = monte_carlo_gen_probability(l, k, MC_TRIALS, seed)?;
        detail.push(format!("seed {seed}: {:.5} +- {:.5}", mc.estimate(), mc.stderr()));
        if mc.within(&exact, 3) {
            return Ok((true, format!("exact {exact}; {}", detail.join("; "))));
        }
    }
    Ok((false, format!("exact {exact}; {}", detail.join("; "))))
}

fn probability() -> Vec<Check> {
    let mut s = Suite::new("probability");
    let list = match suite_surjections() {
        Ok(list) => list,
        Err(e) => {
            s.check("suite surjections", "", || Err(e));
            return s.checks;
        }
    };
    for f in list {
        let label = surjection_label(&f);
        let lattice = stable_lattice(&f);
        let l = match lattice {
            Ok(l) => l,
            Err(e) => {
                s.check(label, PROB_REF, || Err(e));
                continue;
            }
        };
        s.check(format!("{label}: exact = exhaustive"), PROB_REF, || {
            let r = l.kernel.order() as u64;
            let mut checked = Vec::new();
            for k in 1..=4u32 {
                if r.pow(k) > EXHAUSTIVE_TUPLE_LIMIT {
                    break;
                }
                if l.exhaustive_gen_probability(k as usize)? != l.exact_gen_probability(k as usize) {
                    return Ok((false, format!("mismatch at k={k}")));
                }
                checked.push(k.to_string());
            }
            Ok((true, format!("k in [{}]", checked.join(","))))
        });
        s.check(format!("{label}: Monte Carlo k=2"), "|p_mc - P(2)| <= 3 stderr", || mc_agrees(&l, 2));
        s.check(
            format!("{label}: maximal-node sum bound"),
            "1 - P(k) <= sum_n m_n^H(R) n^(-k)",
            || {
                let ok = (1..=4).all(|k| l.pfr_sum_bound(k).holds());
                Ok((ok, format!("m = {:?}", l.m_counts())))
            },
        );
        s.check(
            format!("{label}: index multiplicativity"),
            "[R : M_i ∩ M_j] = [R : M_i][R : M_j] for distinct maximal H-stable M_i, M_j",
            || Ok((l.independence_holds(), format!("{} maximal nodes", l.maximal().len()))),
        );
    }
    s.checks
}

fn ideal_sandwich() -> Vec<Check> {
    let mut s = Suite::new("ideal-sandwich");
    for name in ["C2", "C3", "C6", "S3", "D4", "A4"] {
        for p in [2, 3] {
            s.check(format!("{name} p={p}"), "r_n(G,F_p) <= m_{p^n}(F_p[G]) <= p^n r_n(G,F_p)", || {
                let g = super::spec::parse_group(name)?;
                let c = ideal_census(&g, p, g.order())?;
                let rows: Vec<String> = c
                    .rows
                    .iter()
                    .filter(|r| r.r > 0 || r.ideals > 0)
                    .map(|r| format!("n={}: {} <= {} <= {}", r.n, r.r, r.ideals, (p as u64).pow(r.n as u32) * r.r))
                    .collect();
                Ok((c.sandwich_holds(), rows.join("; ")))
            });
        }
    }
    s.checks
}

fn simple_of_dim(g: &GroupRef, p: u32, dim: usize) -> Result<GModule> {
    simple_modules(g, &FqField::prime(p)?)?
        .into_iter()
        .map(|s| s.module)
        .find(|m| m.dim() == dim && !m.action().iter().all(Matrix::is_identity))
        .ok_or_else(|| Error::Internal(format!("no nontrivial simple module of dimension {dim}")))
}

fn generation_bounds() -> Vec<Check> {
    let mut s = Suite::new("generation-bounds");
    const GEN_REF: &str = "d(E) <= d(G) + 1 for abelian minimal kernels and d(E) <= d(G) + 2 in general";
    for (name, p, k) in [("C2", 2, 1), ("C2", 3, 1), ("C3", 3, 1), ("C3", 2, 2), ("S3", 2, 1), ("S3", 3, 1), ("S3", 2, 2)] {
        s.check(format!("abelian minimal extensions of {name} by F_{p}^{k}"), GEN_REF, || {
            let g = super::spec::parse_group(name)?;
            let ext = abelian_minimal_extensions(&g, p, k)?;
            let mut ok = true;
            let mut ds = Vec::new();
            for r in &ext.records {
                let b = generation_bound_check(r)?;
                ok &= b.holds();
                ds.push(format!("{}<={}", b.d_total, b.bound));
            }
            Ok((ok, ds.join(" ")))
        });
    }
    s.check("couplings of C2 by A5 and E_H over C2", GEN_REF, || {
        let c2 = cyclic(2)?;
        let a5 = alternating(5)?;
        let mut records: Vec<ExtensionRecord> = enumerate_couplings(&c2, &a5, 1)?
            .iter()
            .map(extension_from_coupling)
            .collect::<Result<_>>()?;
        records.push(semidirect_eh(&Subgroup::trivial(&c2), &a5)?);
        let mut ok = true;
        let mut ds = Vec::new();
        for r in &records {
            let b = generation_bound_check(r)?;
            ok &= b.holds();
            ds.push(format!("{}<={}", b.d_total, b.bound));
        }
        Ok((ok, ds.join(" ")))
    });
    s.check(
        "(V x| S3) x C2 with V the 2-dim F_2 simple",
        "d((V x| G) x H) <= d(G) + d(H), generated by (0,g_i,1), (v,1,h_1), (0,1,h_j)",
        || {
            let s3 = symmetric(3)?;
            let v = simple_of_dim(&s3, 2, 2)?;
            let r = semidirect_product_generators_check(&v, &cyclic(2)?)?;
            Ok((
                r.holds() && r.d_total <= 3 && r.tuple.len() == 3,
                format!("d = {}, tuple {:?} with v = {:?}", r.d_total, r.tuple, r.v),
            ))
        },
    );
    s.checks
}

/// Small configurations of every command, run twice each.
pub fn determinism_configs() -> Vec<RunConfig> {
    let base = |command: &str, group: Option<&str>| RunConfig {
        command: command.to_string(),
        suite: None,
        group: group.map(str::to_string),
        p: 2,
        e: 1,
        nmax: 4,
        kmax: 2,
        d: 2,
        seed: 7,
        trials: 2000,
    };
    let mut free = base("freegrowth", None);
    free.nmax = 2;
    let mut verify = base("verify", None);
    verify.suite = Some("convolution".into());
    vec![
        base("repgrowth", Some("S3")),
        base("extgrowth", Some("C2")),
        free,
        base("probgen", Some("C4")),
        base("idealgrowth", Some("S3")),
        verify,
    ]
}

fn determinism() -> Vec<Check> {
    let mut s = Suite::new("determinism");
    for config in determinism_configs() {
        for format in [Format::Json, Format::Csv] {
            s.check(
                format!("{} {:?}", config.command, format),
                "identical config and seed give byte-identical output",
                || {
                    let a = render(&execute(&config, None)?, format)?;
                    let b = render(&execute(&config, None)?, format)?;
                    Ok((a == b, format!("{} bytes", a.len())))
                },
            );
        }
    }
    s.checks
}
