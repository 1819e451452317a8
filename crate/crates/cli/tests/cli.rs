//! End-to-end tests of the binary: output bytes, exit codes, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_superverma"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("superverma-test-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn validate_builtin_ok() {
    let out = run(&["validate", "--algebra", "osp12"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "OK\n");
}

#[test]
fn validate_perturbed_table_exits_one_and_names_jacobi() {
    // serialize the builtin, then break one structure constant
    let good = run(&["eval", "x*y", "--algebra", "osp12"]);
    assert!(good.status.success());

    let table = superverma_core::structure::serialize_algebra(&superverma_core::structure::osp12());
    let broken = table.replace("bracket [x,x] = 2*X", "bracket [x,x] = 2*X + H");
    assert_ne!(table, broken, "perturbation must apply");
    let path = temp_file("broken.alg", &broken);

    let out = run(&["validate", "--algebra", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("Jacobi") || text.contains("error"), "got: {text}");
    assert!(text.contains("x") && text.contains("y"), "failure should name the triple: {text}");
}

#[test]
fn validate_malformed_file_exits_two() {
    let path = temp_file("malformed.alg", "basis H even\nbracket [H = 1\n");
    let out = run(&["validate", "--algebra", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn validate_roundtrip_of_serialized_builtin() {
    let table = superverma_core::structure::serialize_algebra(&superverma_core::structure::osp12());
    let path = temp_file("roundtrip.alg", &table);
    let out = run(&["validate", "--algebra", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert_eq!(stdout(&out), "OK\n");
}

#[test]
fn eval_normal_form_and_beta() {
    let out = run(&["eval", "x*y", "--algebra", "osp12"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "- y*x + H\n");

    let out = run(&["eval", "beta(x*y)", "--algebra", "osp12", "--lambda", "t=-1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "-1\n");
}

#[test]
fn eval_star_involution_prints_fixed_point() {
    let once = run(&["eval", "star(x*y)", "--algebra", "osp12"]);
    assert!(once.status.success());
    let twice = run(&["eval", "star(star(x*y))", "--algebra", "osp12"]);
    let plain = run(&["eval", "x*y", "--algebra", "osp12"]);
    assert_eq!(stdout(&twice), stdout(&plain));
}

#[test]
fn eval_output_reparses_to_itself() {
    for expr in ["x*y", "star(x*y*x)", "Y^2*H - 2*X", "(1/2+3/2*i)*y"] {
        let first = run(&["eval", expr, "--algebra", "osp12"]);
        assert!(first.status.success());
        let printed = stdout(&first);
        let again = run(&["eval", printed.trim(), "--algebra", "osp12"]);
        assert_eq!(stdout(&again), printed, "expr `{expr}`");
    }
}

#[test]
fn eval_errors() {
    let out = run(&["eval", "Q*y", "--algebra", "osp12"]);
    assert_eq!(out.status.code(), Some(2));

    let out = run(&["eval", "x*", "--algebra", "osp12"]);
    assert_eq!(out.status.code(), Some(2));

    // decimals are rejected, not approximated
    let out = run(&["eval", "H", "--algebra", "osp12", "--lambda", "t=-1.5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn gram_csv_diagonal() {
    let out = run(&[
        "gram", "--algebra", "osp12", "--lambda", "t=-1", "--depth", "4", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "# superverma-csv v1 gram");
    assert_eq!(lines.next().unwrap(), "depth,i,j,re,im,verdict");
    let rows: Vec<&str> = lines.collect();
    let expected = [
        "0,0,0,1,0,positive-definite",
        "1,0,0,1,0,positive-definite",
        "2,0,0,1,0,positive-definite",
        "3,0,0,2,0,positive-definite",
        "4,0,0,4,0,positive-definite",
    ];
    assert_eq!(rows, expected);
}

#[test]
fn gram_accepts_algebra_file_path() {
    let table = superverma_core::structure::serialize_algebra(&superverma_core::structure::osp12());
    let path = temp_file("osp12.alg", &table);
    let from_file = run(&[
        "gram", "--algebra", path.to_str().unwrap(), "--lambda", "t=-1", "--depth", "4",
        "--format", "csv",
    ]);
    let from_builtin = run(&[
        "gram", "--algebra", "osp12", "--lambda", "t=-1", "--depth", "4", "--format", "csv",
    ]);
    assert!(from_file.status.success());
    assert_eq!(from_file.stdout, from_builtin.stdout);
}

#[test]
fn gram_depth_zero_single_row() {
    let out = run(&[
        "gram", "--algebra", "sl2", "--lambda", "t=-2", "--depth", "0", "--format", "csv",
    ]);
    let text = stdout(&out);
    assert!(text.ends_with("0,0,0,1,0,positive-definite\n"), "got: {text}");
}

#[test]
fn gram_symbolic_prints_polynomials_and_closed_form() {
    let out = run(&["gram", "--algebra", "sl2", "--symbolic", "--depth", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[ - t ]"), "level 1 should be -t: {text}");
    assert!(text.contains("closed form: levels 0..=3 positive definite iff t < 0"), "{text}");
}

#[test]
fn scan_window_and_reducible_annotations() {
    let out = run(&[
        "unitary-scan", "--algebra", "osp12", "--from", "-2", "--to", "2", "--step", "1/2",
        "--depth", "8",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let body: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(
        body,
        vec![
            "-2,UnitaryToDepth,8",
            "-3/2,UnitaryToDepth,8",
            "-1,UnitaryToDepth,8",
            "-1/2,UnitaryToDepth,8",
            "0,Reducible,",
            "1/2,NotUnitary,1",
            "1,Reducible,",
            "3/2,NotUnitary,1",
            "2,Reducible,",
        ]
    );

    // empty window: header only
    let out = run(&[
        "unitary-scan", "--algebra", "sl2", "--from", "1/3", "--to", "1/4", "--step", "1/2",
        "--depth", "4",
    ]);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 2);
}

#[test]
fn scan_is_byte_deterministic() {
    let args = [
        "unitary-scan", "--algebra", "sl2", "--from", "-2", "--to", "2", "--step", "1/4",
        "--depth", "6",
    ];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    assert!(!a.stdout.is_empty());
}

#[test]
fn scan_writes_output_file() {
    let path = std::env::temp_dir().join(format!("superverma-scan-{}.csv", std::process::id()));
    let out = run(&[
        "unitary-scan", "--algebra", "osp12", "--from", "-1", "--to", "1", "--step", "1",
        "--depth", "4", "--out", path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("# superverma-csv v1 unitary-scan\n"));
    std::fs::remove_file(&path).ok();
}

#[test]
fn gram_table_prints_certificate_and_witness() {
    let out = run(&["gram", "--algebra", "osp12", "--lambda", "t=1/2", "--depth", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("verdict: indefinite"), "{text}");
    assert!(text.contains("witness: y*v  (norm -1/2)"), "{text}");
    assert!(text.contains("certificate: NotUnitary at level 1"), "{text}");

    let out = run(&["gram", "--algebra", "osp12", "--lambda", "t=-1", "--depth", "3"]);
    assert!(stdout(&out).contains("certificate: UnitaryToDepth(3)"));

    let out = run(&["gram", "--algebra", "osp12", "--lambda", "t=0", "--depth", "2"]);
    let text = stdout(&out);
    assert!(text.contains("kernel: y*v"), "{text}");
    assert!(text.contains("certificate: Reducible at level 1"), "{text}");
}

#[test]
fn thread_cap_does_not_change_output() {
    let args = [
        "unitary-scan", "--algebra", "osp12", "--from", "-2", "--to", "2", "--step", "1/4",
        "--depth", "8",
    ];
    let default = run(&args);
    let capped = bin().args(args).env("SUPERVERMA_THREADS", "1").output().unwrap();
    assert!(capped.status.success());
    assert_eq!(default.stdout, capped.stdout);
}

#[test]
fn scan_rejects_nonpositive_step() {
    let out = run(&[
        "unitary-scan", "--algebra", "sl2", "--from", "0", "--to", "1", "--step", "0",
        "--depth", "2",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn singular_reports() {
    let out = run(&["singular", "--algebra", "sl2", "--lambda", "t=2", "--depth", "4"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("level 3: Y^3*v"), "{text}");

    let out = run(&["singular", "--algebra", "osp12", "--lambda", "t=-1", "--depth", "6"]);
    let text = stdout(&out);
    assert!(text.contains("no singular vectors up to depth 6"), "{text}");

    // degenerate level 1 at t = 0
    let out = run(&["singular", "--algebra", "osp12", "--lambda", "t=0", "--depth", "2"]);
    let text = stdout(&out);
    assert!(text.contains("level 1"), "{text}");
}

#[test]
fn ktype_bound_from_table_file() {
    let table = "default zero\nentry 0 = 1\nentry 1 = 1\nentry -1 = 1\n";
    let path = temp_file("ktable", table);
    let out = run(&[
        "ktype", "--algebra", "osp12", "--module", path.to_str().unwrap(), "--ptype", "0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("odd span dimension: 4"), "{text}");
    assert!(text.contains("multiplicity bound: 12"), "{text}");
}

#[test]
fn ktype_trivial_module_bound_is_finite_and_positive() {
    let table = "default zero\nentry 0 = 1\n";
    let path = temp_file("ktable-trivial", table);
    let out = run(&[
        "ktype", "--algebra", "osp12", "--module", path.to_str().unwrap(), "--ptype", "0",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    // only the weight-0 character of the inducing module contributes
    assert!(text.contains("multiplicity bound: 4"), "{text}");
}

#[test]
fn ktype_missing_entry_exits_one_and_names_character() {
    let table = "default missing\nentry 0 = 1\n";
    let path = temp_file("ktable-missing", table);
    let out = run(&[
        "ktype", "--algebra", "osp12", "--module", path.to_str().unwrap(), "--ptype", "0",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("no entry for"), "{err}");
}
