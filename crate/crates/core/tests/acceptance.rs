//! Acceptance criteria. Each criterion prints one PASS or FAIL line; the
//! process exits nonzero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, Output};
use std::time::Instant;

use num_bigint::BigUint;
use pgl::cli::verify::run_suite;
use pgl::extensions::{abelian_minimal_extension_classes, minimal_extension_count};
use pgl::freegrowth::{gl_order, parabolic_order};
use pgl::groups::cyclic;

/// Runs a verify suite and reports the failing checks.
fn suite(name: &str) -> Result<String, String> {
    let checks = run_suite(name).map_err(|e| e.to_string())?;
    if checks.is_empty() {
        return Err(format!("suite {name} produced no checks"));
    }
    let failed: Vec<String> = checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{}: {}", c.check, c.detail))
        .collect();
    if failed.is_empty() {
        Ok(format!("{} checks", checks.len()))
    } else {
        Err(failed.join("; "))
    }
}

fn ensure(cond: bool, what: &str) -> Result<(), String> {
    cond.then_some(()).ok_or_else(|| what.to_string())
}

fn pgl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pgl"))
        .args(args)
        .env_remove("PGL_CACHE")
        .output()
        .expect("pgl binary runs")
}

fn order_formulas() -> Result<String, String> {
    ensure(gl_order(2, 2) == BigUint::from(6u32), "|GL_2(F_2)| = 6")?;
    ensure(gl_order(2, 3) == BigUint::from(48u32), "|GL_2(F_3)| = 48")?;
    ensure(parabolic_order(1, 1, 2) == BigUint::from(2u32), "|P(1,1,F_2)| = 2")?;
    suite("order-formulas")
}

fn prop52_chain() -> Result<String, String> {
    let c2 = cyclic(2).map_err(|e| e.to_string())?;
    let classes = abelian_minimal_extension_classes(&c2, 2, 1).map_err(|e| e.to_string())?;
    ensure(classes.count() == 2, "e^min_2(C2) = 2")?;
    let total = minimal_extension_count(&c2, 2).map_err(|e| e.to_string())?;
    ensure(total.total() == 2, "degree-2 minimal extensions of C2")?;
    suite("prop52-chain")
}

fn determinism() -> Result<String, String> {
    let runs: [&[&str]; 6] = [
        &["repgrowth", "--group", "S3", "--p", "2", "--nmax", "4"],
        &["extgrowth", "--group", "C2", "--nmax", "4", "--format", "csv"],
        &["freegrowth", "--p", "2", "--nmax", "2"],
        &["probgen", "--group", "C2xC2", "--kmax", "2", "--trials", "2000", "--seed", "7"],
        &["idealgrowth", "--group", "S3", "--p", "2", "--nmax", "2"],
        &["verify", "galois-law", "--format", "csv"],
    ];
    for args in runs {
        let a = pgl(args);
        let b = pgl(args);
        ensure(a.status.success(), &format!("pgl {} exited with {}", args.join(" "), a.status))?;
        ensure(!a.stdout.is_empty() && a.stdout == b.stdout, &format!("pgl {} differs between runs", args.join(" ")))?;
    }
    suite("determinism")
}

fn cli_smoke() -> Result<String, String> {
    let rep = pgl(&["repgrowth", "--group", "S3", "--p", "2", "--nmax", "4", "--format", "csv"]);
    let text = String::from_utf8_lossy(&rep.stdout);
    ensure(text == "n,r,r_star\n1,1,1\n2,1,1\n3,0,0\n4,0,0\n", &format!("repgrowth S3 output {text:?}"))?;
    let c6 = pgl(&["repgrowth", "--group", "C6", "--p", "7", "--nmax", "1", "--format", "csv"]);
    ensure(String::from_utf8_lossy(&c6.stdout).contains("\n1,6,6\n"), "C6 over F_7 has r_1 = 6")?;
    ensure(pgl(&["verify", "prop52-chain"]).status.code() == Some(0), "verify prop52-chain exits 0")?;
    let unknown = pgl(&["verify", "no-such-suite"]);
    ensure(unknown.status.code() == Some(2), "unknown suite exits 2")?;
    ensure(String::from_utf8_lossy(&unknown.stderr).contains("galois-law"), "unknown suite lists the suites")?;
    ensure(pgl(&["repgrowth", "--group", "Z9"]).status.code() == Some(2), "unknown group exits 2")?;
    let refused = pgl(&["freegrowth", "--p", "2", "--nmax", "3", "--budget-ms", "1"]);
    ensure(refused.status.code() == Some(3), "budget refusal exits 3")?;
    Ok("exit codes and outputs".into())
}

fn main() {
    let criteria: Vec<(&str, Box<dyn Fn() -> Result<String, String>>)> = vec![
        ("1 order formulas", Box::new(order_formulas)),
        ("2 free-group bounds", Box::new(|| suite("free-bounds"))),
        ("3 Brauer cross-check", Box::new(|| suite("brauer"))),
        ("4 Galois dimension law", Box::new(|| suite("galois-law"))),
        ("5 convolution identity", Box::new(|| suite("convolution"))),
        ("6 minimal extension chain", Box::new(prop52_chain)),
        ("7 extension counting sandwich", Box::new(|| suite("extension-sandwich"))),
        ("8 E_H suite", Box::new(|| suite("eh-suite"))),
        ("9 probability oracle", Box::new(|| suite("probability"))),
        ("10 ideal sandwich", Box::new(|| suite("ideal-sandwich"))),
        ("11 generation bounds", Box::new(|| suite("generation-bounds"))),
        ("12 determinism", Box::new(determinism)),
        ("cli smoke", Box::new(cli_smoke)),
    ];
    let total = Instant::now();
    let mut failures = 0;
    for (name, run) in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  {name} ({detail}, {secs:.1} s)"),
            Err(detail) => {
                failures += 1;
                println!("FAIL  {name} ({secs:.1} s): {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed, {:.1} s",
        criteria.len() - failures,
        total.elapsed().as_secs_f64()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
