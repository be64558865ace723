use std::process::Command;

use qschubert::algebra::{parse_text, Polynomial};
use qschubert::cli::run_with;
use qschubert::quantum_ring::StructureTable;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("qschub").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn poly_examples() {
    let (code, out, _) = run(&["poly", "--w", "[3,1,2]", "--family", "quantum-double"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "x1^2 - x1*a1 - x1*a2 + a1*a2 - q1");
    let (code, out, _) = run(&["poly", "--w", "[1]", "--family", "classical"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "1");
}

#[test]
fn parabolic_poly_matches_product_formula() {
    let (code, out, _) = run(&["poly", "--parabolic", "2,1,3", "--w", "[5,6,4,1,2,3]"]);
    assert_eq!(code, 0);
    let x = Polynomial::x;
    let a = Polynomial::a;
    let mut expected = (x(1) - a(4)) * (x(2) - a(4));
    for i in 1..=3 {
        expected = expected * ((x(1) - a(i)) * (x(2) - a(i)) * (x(3) - a(i)) + Polynomial::q(1));
    }
    assert_eq!(parse_text(out.trim()).unwrap(), expected);
}

#[test]
fn expand_prints_the_basis_terms() {
    let (code, out, _) = run(&["expand", "--poly", "x1^2", "--family", "classical"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "[3,1,2]: 1");
    let (code, out, _) = run(&["expand", "--poly", "x2", "--family", "classical"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines.len(), 2, "{out}");
    assert!(lines.contains(&"[1,3,2]: 1") && lines.contains(&"[2,1]: -1"), "{out}");
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        &["poly", "--w", "[1,1]"][..],
        &["poly", "--w", "[2,1]", "--family", "nonsense"],
        &["expand", "--poly", "x1 +* 2"],
        &["table", "--n", "3", "--parabolic", "2,1"],
        &["verify", "chevalley", "--flavor", "parabolic", "--parabolic", "0,2"],
        &["frobnicate"],
    ] {
        let (code, _, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn verify_suites_succeed() {
    for suite in ["chevalley", "cauchy", "quantization", "stability", "bijection"] {
        let (code, out, err) = run(&["verify", suite, "--max-n", "3"]);
        assert_eq!(code, 0, "{suite}: {out}{err}");
    }
    let (code, _, _) = run(&["verify", "chevalley", "--flavor", "parabolic", "--parabolic", "2,1"]);
    assert_eq!(code, 0);
}

#[test]
fn table_json_matches_library() {
    let (code, out, _) = run(&["table", "--n", "3", "--format", "json"]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(StructureTable::from_json(&json).unwrap(), StructureTable::compute(3, None).unwrap());
}

#[test]
fn output_is_deterministic() {
    let args = ["table", "--parabolic", "2,1"];
    assert_eq!(run(&args).1, run(&args).1);
}

#[test]
fn binary_selftest_passes() {
    let status = Command::new(env!("CARGO_BIN_EXE_qschub")).arg("selftest").output().unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stdout));
    let stdout = String::from_utf8(status.stdout).unwrap();
    assert_eq!(stdout.lines().filter(|l| l.starts_with("PASS")).count(), 10);
}
