//! End-to-end checks of the command-line interface: the exit-code
//! contract, determinism of reports, and the filterable classification
//! output.

use std::io::Write;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_pencillab"))
}

fn write_temp(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join("pencillab-cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    path
}

fn staircase_json() -> String {
    let pencil = pencillab::pencil::QuadricPencil::new(
        pencillab::exact::SymMat::identity(6),
        pencillab::exact::SymMat::diagonal_i64(&[1, 2, 3, 4, 5, 6]),
    )
    .unwrap();
    pencillab::report::pencil_to_json(&pencil)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

#[test]
fn analyze_success_and_determinism() {
    let path = write_temp("staircase.json", &staircase_json());
    let first = run(&["analyze", path.to_str().unwrap()]);
    assert!(first.status.success());
    let second = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(
        first.stdout, second.stdout,
        "identical bytes in, identical bytes out"
    );
    let text: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(text["walk"]["invariant"], serde_json::json!([6]));
    assert_eq!(text["walk"]["h"], serde_json::json!(6));
    // every real-point verdict is "no" for the definite staircase
    for row in text["verdicts"]["rows"].as_array().unwrap() {
        assert_eq!(row["fano_real_point"]["value"], serde_json::json!("no"));
    }
}

#[test]
fn parse_error_exit_code() {
    let path = write_temp("garbage.json", "{ not json");
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn singular_pencil_exit_code() {
    let singular = pencillab::report::pencil_to_json(
        &pencillab::pencil::QuadricPencil::new(
            pencillab::exact::SymMat::identity(4),
            pencillab::exact::SymMat::diagonal_i64(&[1, 1, 2, 3]),
        )
        .unwrap(),
    );
    let path = write_temp("singular.json", &singular);
    let out = run(&["analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn plane_not_on_pencil_exit_code() {
    let pencil = write_temp("p1.json", &staircase_json());
    let plane = write_temp(
        "bad_plane.json",
        r#"{"r": 0, "basis": [["1","0","0","0","0","0"]]}"#,
    );
    let out = run(&["reduce", pencil.to_str().unwrap(), plane.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn reduce_emits_equations_and_fibers() {
    let gen = pencillab::pencil::generate_test_pencil(4, 0, 5).unwrap();
    let pencil = write_temp("gen4.json", &pencillab::report::pencil_to_json(&gen.pencil));
    let plane = write_temp(
        "gen4_plane.json",
        &pencillab::report::subspace_to_json(&gen.plane),
    );
    let out = run(&[
        "reduce",
        pencil.to_str().unwrap(),
        plane.to_str().unwrap(),
        "--at",
        "2",
        "--at",
        "1/3",
        "--at",
        "inf",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["equations"].as_array().unwrap().len(), 2); // r + 2
    let fibers = doc["fibers"].as_array().unwrap();
    assert_eq!(fibers.len(), 3);
    assert_eq!(fibers[2]["at"], serde_json::json!(["1", "0"]));
    for f in fibers {
        // generic fiber of the reduction in P^4 with r = 0 is 3x3
        assert_eq!(f["gram"].as_array().unwrap().len(), 3);
        assert_eq!(f["corank"], serde_json::json!(0));
    }
}

#[test]
fn isotopy_filter_lists() {
    let out = run(&["isotopy", "6", "--filter", "f2-real-point"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let invs: Vec<&str> = doc["classes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["invariant"].as_str().unwrap())
        .collect();
    assert_eq!(
        invs,
        vec!["(1)", "(1,1,1)", "(1,1,1,1,1)", "(1,1,1,1,1,1,1)"]
    );

    let out = run(&["isotopy", "5", "--filter", "h=4,f=1"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["classes"].as_array().unwrap().len(), 2);

    // N < 3 is rejected with the unsupported exit code
    let out = run(&["isotopy", "2"]);
    assert_eq!(out.status.code(), Some(9));
}

#[test]
fn count_census_and_ceiling() {
    let pencil = pencillab::pencil::QuadricPencil::new(
        pencillab::exact::SymMat::identity(5),
        pencillab::exact::SymMat::diagonal_i64(&[1, 2, 3, 5, 8]),
    )
    .unwrap();
    let path = write_temp("dp4.json", &pencillab::report::pencil_to_json(&pencil));
    let out = run(&["count", path.to_str().unwrap(), "--prime", "11", "--r", "1"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["total"], serde_json::json!(16));

    // bad reduction: diag entries collide mod 3
    let out = run(&["count", path.to_str().unwrap(), "--prime", "3", "--r", "0"]);
    assert_eq!(out.status.code(), Some(5));

    // ceiling guard via the environment override
    let out = bin()
        .args(["count", path.to_str().unwrap(), "--prime", "11", "--r", "1"])
        .env("PENCILLAB_CEILING", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(6));
    assert!(String::from_utf8_lossy(&out.stderr).contains("estimated"));
}

#[test]
fn count_with_reference_plane_reports_bijection() {
    // a generated pencil with good reduction at 3, counted against its
    // own rational line
    let (gen, prime) = pencillab::battery::find_good_reduction(4, 0, 77, &[3]).unwrap();
    assert_eq!(prime, 3);
    let pencil = write_temp(
        "bij_pencil.json",
        &pencillab::report::pencil_to_json(&gen.pencil),
    );
    let plane = write_temp(
        "bij_plane.json",
        &pencillab::report::subspace_to_json(&gen.plane),
    );
    let out = run(&[
        "count",
        pencil.to_str().unwrap(),
        "--prime",
        "3",
        "--r",
        "0",
        "--ell",
        plane.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let b = &doc["bijection"];
    assert_eq!(b["lhs"], b["rhs"], "bijection counts in {doc}");
    assert!(doc["partition"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["count"].as_u64().unwrap() > 0));
}

#[test]
fn verify_summary_and_exit() {
    let out = run(&["verify", "--seed", "5", "--trials", "3", "--jobs", "2"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.lines().filter(|l| l.starts_with("PASS")).count() >= 10);
    assert!(!stdout.contains("FAIL"));

    let out = run(&["verify", "--trials", "0"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("vacuously"));
}
