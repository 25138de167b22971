//! Running commands and verify suites in-process and rendering records.

use pgl::cli::verify::run_suite;
use pgl::cli::{execute, render, Format, RunConfig};

fn main() -> pgl::Result<()> {
    let config = RunConfig {
        command: "repgrowth".into(),
        suite: None,
        group: Some("S3xC2".into()),
        p: 3,
        e: 1,
        nmax: 4,
        kmax: 3,
        d: 2,
        seed: 1,
        trials: 0,
    };
    let record = execute(&config, None)?;
    print!("{}", render(&record, Format::Csv)?);
    print!("{}", render(&record, Format::Json)?);

    for check in run_suite("galois-law")? {
        println!("{} {}: {}", if check.passed { "ok  " } else { "FAIL" }, check.check, check.detail);
    }
    Ok(())
}
