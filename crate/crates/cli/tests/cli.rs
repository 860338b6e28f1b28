mod common;

use std::path::{Path, PathBuf};
use std::process::Output;

use assert_cmd::Command;
use common::GOLDEN;
use finfiber_core::{
    christoffel_from_discount, financial_translate, force_of_interest, induced_discount, project_compound,
    project_general, rate_isomorphism, FinancialEvent, LawKind, Rate,
};

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn finfiber() -> Command {
    let mut cmd = Command::cargo_bin("finfiber").unwrap();
    cmd.current_dir(crate_dir()).env_remove("FINFIBER_TOL");
    cmd
}

fn run(args: &[&str]) -> Output {
    finfiber().args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn golden_path(name: &str) -> PathBuf {
    crate_dir().join("tests/golden").join(format!("{name}.out"))
}

/// Set `FINFIBER_BLESS=1` to rewrite the golden files from current output.
#[test]
fn golden_outputs() {
    let bless = std::env::var_os("FINFIBER_BLESS").is_some();
    for (name, args) in GOLDEN {
        let first = stdout(args);
        let second = stdout(args);
        assert_eq!(first, second, "{name}: output differs between runs");
        let path = golden_path(name);
        if bless {
            std::fs::write(&path, &first).unwrap();
            continue;
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(first, expected, "{name}: output differs from {}", path.display());
    }
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(stdout(args).trim()).unwrap()
}

fn num(v: &serde_json::Value, key: &str) -> f64 {
    v[key].as_f64().unwrap_or_else(|| panic!("{key} missing in {v}"))
}

#[test]
fn documented_values() {
    let v = json(&["project", "--t", "2", "--c", "121", "--rate", "0.1"]);
    assert!((num(&v, "base") - 100.0).abs() < 1e-12);
    assert_eq!(num(&json(&["project", "--t", "0", "--c", "5", "--rate", "0.3"]), "base"), 5.0);
    let v = json(&["project", "--t", "-1", "--c", "10", "--law", "simple", "--param", "1.0"]);
    assert_eq!(num(&v, "base"), 20.0);
    let v = json(&["isomap", "--t", "2", "--c", "121", "--from", "0.1", "--to", "0.21"]);
    assert_eq!(num(&v, "time"), 2.0);
    assert!((num(&v, "capital") - 146.41).abs() < 1e-10);
    let v = json(&["force", "--law", "compound", "--param", "0.1", "--t", "7"]);
    assert!((num(&v, "delta") - 0.095_310_179_804_324_86).abs() < 1e-15);
    let v = json(&["transport", "--t", "0", "--c", "100", "--h", "0", "--law", "compound", "--param", "0.1"]);
    assert_eq!((num(&v, "time"), num(&v, "capital")), (0.0, 100.0));

    let rows = stdout(&["fiber", "--rate", "0.1", "--base", "100", "--t-min", "0", "--t-max", "2", "--steps", "2"]);
    let parsed: Vec<(f64, f64)> = rows
        .lines()
        .skip(1)
        .map(|l| {
            let (a, b) = l.split_once(',').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    let expected = [(0.0, 100.0), (1.0, 110.0), (2.0, 121.0)];
    assert_eq!(parsed.len(), 3);
    for ((t, m), (et, em)) in parsed.iter().zip(expected) {
        assert_eq!(*t, et);
        assert!((m - em).abs() < 1e-10);
    }
    let zero = stdout(&["fiber", "--rate", "0.1", "--base", "0", "--t-min", "-1", "--t-max", "1", "--steps", "4"]);
    assert!(zero.lines().skip(1).all(|l| l.ends_with(",0")));
    let flat = stdout(&["fiber", "--rate", "0", "--base", "7", "--t-min", "-1", "--t-max", "1", "--steps", "4"]);
    assert!(flat.lines().skip(1).all(|l| l.ends_with(",7")));
}

#[test]
fn section_check_reports() {
    let v =
        json(&["section-check", "--input", "tests/fixtures/fiber_curve.csv", "--rate", "0.1", "--targets", "0,100"]);
    assert_eq!(v["is_trace"], false);
    assert_eq!(v["failure_reason"], "injectivity");
    assert!(v["witness"].is_null());

    let dir = tempfile::tempdir().unwrap();
    let witness = dir.path().join("witness.csv");
    let v = json(&[
        "section-check",
        "--input",
        "tests/fixtures/identity_trace.csv",
        "--rate",
        "0.1",
        "--targets",
        "-5,5",
        "--witness-out",
        witness.to_str().unwrap(),
    ]);
    assert_eq!(v["is_trace"], true);
    assert!(v["failure_reason"].is_null());
    assert_eq!(v["witness"], witness.to_str().unwrap());
    let text = std::fs::read_to_string(&witness).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,v"));
    for line in lines {
        let (t, w) = line.split_once(',').unwrap();
        let (t, w): (f64, f64) = (t.parse().unwrap(), w.parse().unwrap());
        assert!((t - w).abs() < 1e-12, "{line}");
    }
}

#[test]
fn tolerance_from_environment() {
    let args = ["section-check", "--input", "tests/fixtures/identity_trace.csv", "--rate", "0.1", "--targets", "-5,5"];
    let out = finfiber().env("FINFIBER_TOL", "0.5").args(args).output().unwrap();
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["tol"], 0.5);
    // samples are 0.25 apart, so a tie threshold of 0.5·5 merges them
    assert_eq!(v["failure_reason"], "injectivity");
    let out = finfiber().env("FINFIBER_TOL", "abc").args(args).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

fn code(args: &[&str]) -> Option<i32> {
    run(args).status.code()
}

#[test]
fn exit_codes() {
    assert_eq!(code(&["project", "--t", "2", "--c", "121"]), Some(2));
    assert_eq!(code(&["project", "--t", "x", "--c", "121", "--rate", "0.1"]), Some(2));
    assert_eq!(code(&["project", "--t", "1", "--c", "1", "--law", "simple"]), Some(2));
    assert_eq!(code(&["project", "--t", "1", "--c", "1", "--law", "bogus", "--param", "1"]), Some(2));
    assert_eq!(code(&["project", "--t", "1", "--c", "1", "--rate", "-1"]), Some(1));
    assert_eq!(code(&["project", "--t", "5000", "--c", "1", "--rate", "1"]), Some(1));
    assert_eq!(
        code(&["fiber", "--rate", "0.1", "--base", "1", "--t-min", "0", "--t-max", "1", "--steps", "0"]),
        Some(2)
    );
    assert_eq!(
        code(&["section-check", "--input", "tests/fixtures/empty.csv", "--rate", "0.1", "--targets", "0,1"]),
        Some(2)
    );
    assert_eq!(
        code(&["section-check", "--input", "tests/fixtures/fiber_curve.csv", "--rate", "0.1", "--targets", "1"]),
        Some(2)
    );
    assert_eq!(code(&["transport", "--t", "0", "--c", "1", "--h", "30", "--law", "simple", "--param", "0.1"]), Some(1));
    assert_eq!(code(&["force", "--t", "-20", "--law", "simple", "--param", "0.1"]), Some(1));

    let out = run(&["section-check", "--input", "tests/fixtures/bad_row.csv", "--rate", "0.1", "--targets", "0,1"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
    assert_eq!(
        code(&["section-check", "--input", "tests/fixtures/missing.csv", "--rate", "0.1", "--targets", "0,1"]),
        Some(1)
    );
}

fn ev(t: f64, c: f64) -> FinancialEvent {
    FinancialEvent::new(t, c).unwrap()
}

#[test]
fn outputs_match_library_bit_for_bit() {
    let cases = [(2.0, 121.0, 0.1), (-7.25, 3.5e6, 0.37), (13.0, -0.001, -0.45)];
    for (t, c, i) in cases {
        let (ts, cs, is) = (t.to_string(), c.to_string(), i.to_string());
        let v = json(&["project", "--t", &ts, "--c", &cs, "--rate", &is]);
        let lib = project_compound(ev(t, c), Rate::new(i).unwrap()).unwrap();
        assert_eq!(num(&v, "base").to_bits(), lib.to_bits());

        let v = json(&["project", "--t", &ts, "--c", &cs, "--law", "compound", "--param", &is]);
        let lib = project_general(ev(t, c), &LawKind::Compound.capitalization(i).unwrap()).unwrap();
        assert_eq!(num(&v, "base").to_bits(), lib.to_bits());

        let v = json(&["isomap", "--t", &ts, "--c", &cs, "--from", &is, "--to", "0.05"]);
        let lib = rate_isomorphism(ev(t, c), Rate::new(i).unwrap(), Rate::new(0.05).unwrap()).unwrap();
        assert_eq!(num(&v, "capital").to_bits(), lib.capital().to_bits());

        for kind in LawKind::ALL {
            let u = kind.capitalization(i).unwrap();
            let v = json(&["force", "--t", "0.5", "--law", kind.id(), "--param", &is]);
            assert_eq!(num(&v, "delta").to_bits(), force_of_interest(&u, 0.5).unwrap().to_bits());

            let f = induced_discount(&u, 0.5).unwrap();
            let v = json(&["christoffel", "--t", "0.5", "--law", kind.id(), "--param", &is]);
            let g = christoffel_from_discount(&f, 0.5).unwrap();
            assert_eq!(num(&v, "gamma").to_bits(), g.gamma.to_bits());

            let v = json(&["transport", "--t", "0.5", "--c", &cs, "--h", "0.25", "--law", kind.id(), "--param", &is]);
            let moved = financial_translate(ev(0.5, c), 0.25, &f).unwrap();
            assert_eq!(num(&v, "capital").to_bits(), moved.capital().to_bits());
            assert_eq!(num(&v, "time").to_bits(), moved.time().to_bits());
        }
    }
}

#[test]
fn isomap_round_trip() {
    for (t, c, a, b) in [(2.0, 121.0, 0.1, 0.21), (-30.0, 5.5, -0.5, 0.9), (45.0, -1e4, 0.02, 0.0)] {
        let there = json(&[
            "isomap",
            "--t",
            &t.to_string(),
            "--c",
            &c.to_string(),
            "--from",
            &a.to_string(),
            "--to",
            &b.to_string(),
        ]);
        let c1 = stdout_field(&there, "capital");
        let back =
            json(&["isomap", "--t", &t.to_string(), "--c", &c1, "--from", &b.to_string(), "--to", &a.to_string()]);
        let c2 = num(&back, "capital");
        assert!((c2 - c).abs() <= 1e-9 * c.abs().max(1.0), "{c} -> {c1} -> {c2}");
    }
}

fn stdout_field(v: &serde_json::Value, key: &str) -> String {
    // re-serialize through the number's own text so the piped value is exact
    v[key].to_string()
}

#[test]
fn golden_files_exist_for_every_case() {
    for (name, _) in GOLDEN {
        assert!(Path::new(&golden_path(name)).exists() || std::env::var_os("FINFIBER_BLESS").is_some(), "{name}");
    }
}
