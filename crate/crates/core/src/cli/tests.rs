use std::cell::Cell;
use std::fs;

use serde_json::json;

use super::*;

fn config(command: &str, group: Option<&str>) -> RunConfig {
    RunConfig {
        command: command.to_string(),
        suite: None,
        group: group.map(str::to_string),
        p: 2,
        e: 1,
        nmax: 3,
        kmax: 2,
        d: 2,
        seed: 1,
        trials: 500,
    }
}

#[test]
fn group_specs_parse_to_expected_orders() {
    for (spec, order) in [
        ("trivial", 1),
        ("1", 1),
        ("C5", 5),
        ("D4", 8),
        ("S3", 6),
        ("A4", 12),
        ("Q8", 8),
        ("PSL27", 168),
        ("S3xC2", 12),
        ("C2^3", 8),
        ("C2xC3^2", 18),
    ] {
        assert_eq!(parse_group(spec).unwrap().order(), order, "{spec}");
    }
}

#[test]
fn malformed_group_specs_are_invalid_input() {
    for spec in ["Z9", "C", "Cx", "S3x", "C2^", "file:/nonexistent/table.json"] {
        assert!(matches!(parse_group(spec), Err(Error::InvalidInput(_))), "{spec}");
    }
}

#[test]
fn table_file_group_spec() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c3.json");
    fs::write(&path, r#"{"label": "Z3", "table": [[0,1,2],[1,2,0],[2,0,1]]}"#).unwrap();
    let g = parse_group(&format!("file:{}", path.display())).unwrap();
    assert_eq!(g.order(), 3);
    fs::write(&path, r#"{"label": "bad", "table": [[0,1],[0,1]]}"#).unwrap();
    assert!(parse_group(&format!("file:{}", path.display())).is_err());
}

#[test]
fn csv_projects_rows_in_field_order() {
    let rows = vec![json!({"n": 1, "r": 2, "note": "a,b"}), json!({"n": 2, "r": 0, "note": null})];
    let rec = ResultRecord::new(&config("repgrowth", Some("S3")), &[("r", "formula")], rows);
    assert_eq!(render(&rec, Format::Csv).unwrap(), "n,r,note\n1,2,\"a,b\"\n2,0,\n");
}

#[test]
fn json_round_trips_and_names_refs() {
    let rec = ResultRecord::new(&config("repgrowth", Some("S3")), &[("r", "formula")], vec![json!({"n": 1})]);
    let text = render(&rec, Format::Json).unwrap();
    assert!(text.ends_with('\n'));
    let back: ResultRecord = serde_json::from_str(&text).unwrap();
    assert_eq!(back, rec);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["ref"]["r"], "formula");
    assert_eq!(v["provenance"]["version"], VERSION);
}

#[test]
fn cache_serves_hits_and_recomputes_corrupt_entries() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let calls = Cell::new(0);
    let compute = || {
        calls.set(calls.get() + 1);
        Ok(vec![1u32, 2, 3])
    };
    let a: Vec<u32> = Cache::get_or_compute(Some(&cache), "kind", &("key", 1), compute).unwrap();
    let b: Vec<u32> = Cache::get_or_compute(Some(&cache), "kind", &("key", 1), compute).unwrap();
    assert_eq!((a.clone(), calls.get()), (b, 1));
    let hash = Cache::key("kind", &("key", 1));
    fs::write(dir.path().join(format!("{hash}.json")), "{not json").unwrap();
    let c: Vec<u32> = Cache::get_or_compute(Some(&cache), "kind", &("key", 1), compute).unwrap();
    assert_eq!((c, calls.get()), (a, 2));
    let entries = fs::read_dir(dir.path()).unwrap().count();
    assert_eq!(entries, 1);
}

#[test]
fn cache_keys_separate_kinds_and_keys() {
    let k = Cache::key("record", &config("repgrowth", Some("S3")));
    assert_eq!(k, Cache::key("record", &config("repgrowth", Some("S3"))));
    assert_ne!(k, Cache::key("census", &config("repgrowth", Some("S3"))));
    assert_ne!(k, Cache::key("record", &config("repgrowth", Some("S4"))));
    assert_eq!(k.len(), 64);
}

#[test]
fn cached_record_equals_fresh_record() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(dir.path());
    let cfg = config("repgrowth", Some("S3"));
    let fresh = execute(&cfg, None).unwrap();
    let first = execute(&cfg, Some(&cache)).unwrap();
    let second = execute(&cfg, Some(&cache)).unwrap();
    assert_eq!(render(&fresh, Format::Json).unwrap(), render(&second, Format::Json).unwrap());
    assert_eq!(first, second);
}

#[test]
fn commands_are_deterministic() {
    for cfg in verify::determinism_configs() {
        let a = execute(&cfg, None).unwrap();
        let b = execute(&cfg, None).unwrap();
        for format in [Format::Json, Format::Csv] {
            assert_eq!(render(&a, format).unwrap(), render(&b, format).unwrap(), "{}", cfg.command);
        }
    }
}

#[test]
fn errors_map_to_exit_codes() {
    assert_eq!(exit_code(&Error::bound("tuples", 1u32, 2u32)), EXIT_BUDGET);
    assert_eq!(exit_code(&Error::Internal("x".into())), EXIT_CHECK_FAILED);
    assert_eq!(exit_code(&Error::invalid("x")), EXIT_INVALID);
    assert_eq!(exit_code(&Error::NotPrime(4)), EXIT_INVALID);
}

#[test]
fn argument_errors_exit_invalid() {
    assert_eq!(run(["pgl", "frobnicate"]), EXIT_INVALID);
    assert_eq!(run(["pgl", "repgrowth", "--p", "x"]), EXIT_INVALID);
    assert_eq!(run(["pgl", "verify", "no-such-suite"]), EXIT_INVALID);
    assert_eq!(run(["pgl", "repgrowth", "--group", "S3", "--p", "4"]), EXIT_INVALID);
}

#[test]
fn verify_rejects_unknown_suite_listing_names() {
    let err = verify::run_suite("nope").unwrap_err().to_string();
    for name in verify::SUITES {
        assert!(err.contains(name), "{err}");
    }
}
