//! End-to-end runs of the `toriclib` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use toriclib::algebra::Poly;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toriclib"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("toriclib-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn polys(v: &serde_json::Value) -> Vec<Poly> {
    v["polynomials"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            let coeffs: Vec<String> = p
                .as_array()
                .unwrap()
                .iter()
                .map(|c| c.as_str().unwrap().to_string())
                .collect();
            Poly::from_coeff_strings(&coeffs).unwrap()
        })
        .collect()
}

const HV: &str =
    r#"{"dim": 2, "figures": [{"vertices": [[0,0],[1,0]]}, {"vertices": [[0,0],[0,1]]}]}"#;

#[test]
fn poly_dominoes_with_oracle_rows() {
    let path = write_temp("hv.json", HV);
    let o = run(&[
        "poly",
        "--input",
        path.to_str().unwrap(),
        "--verify-n",
        "9,10",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("N^2 - 4N, n_0=9"), "{out}");
    assert!(out.contains("predicted 6237, brute force 6237"));
    assert!(out.contains("predicted 9600, brute force 9600"));
}

#[test]
fn poly_box_and_empty_set() {
    let h = write_temp(
        "h.json",
        r#"{"dim": 2, "figures": [{"vertices": [[0,0],[1,0]]}]}"#,
    );
    let o = run(&[
        "poly",
        "--input",
        h.to_str().unwrap(),
        "--box",
        "--verify-n",
        "2,5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("n^2 - n"));

    let empty = write_temp("empty.json", r#"{"dim": 2, "figures": []}"#);
    let o = run(&[
        "poly",
        "--input",
        empty.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(polys(&json(&o)), vec![Poly::one()]);
}

#[test]
fn json_round_trips_and_is_deterministic() {
    let o = run(&[
        "sequence",
        "--input",
        "dominoes2d",
        "--max-weight",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["variable"], "N=n^d");
    let ps = polys(&v);
    assert_eq!(ps[1], Poly::from_ints(&[0, 2]));
    assert_eq!(ps[2], Poly::from_ints(&[0, -7, 2]));
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));
    let again = run(&[
        "sequence",
        "--input",
        "dominoes2d",
        "--max-weight",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(o.stdout, again.stdout);
}

#[test]
fn sequence_examples() {
    let o = run(&["sequence", "--input", "dominoes2d", "--max-weight", "0"]);
    assert_eq!(o.status.code(), Some(0));

    let o = run(&[
        "sequence",
        "--input",
        "dominoes2d_weighted",
        "--max-weight",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let ps = polys(&json(&o));
    let half = toriclib::algebra::rat(1, 2);
    assert_eq!(ps[1], Poly::var());
    assert_eq!(
        ps[2],
        &Poly::var() + &Poly::from_ints(&[0, -3, 1]).scale(&half)
    );

    let o = run(&[
        "sequence",
        "--input",
        "dominoes2d",
        "--max-weight",
        "2",
        "--verify-n",
        "9",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("EQUAL"));
    assert!(out.contains("predicted 12555, brute force 12555"), "{out}");
}

#[test]
fn chromatic_examples() {
    let o = run(&[
        "chromatic",
        "--dim",
        "2",
        "--max-weight",
        "3",
        "--verify-n",
        "5",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let ps = polys(&v);
    assert_eq!(ps[1], Poly::from_ints(&[0, 2]));
    assert_eq!(ps[2], Poly::from_ints(&[0, -1, 2]));
    assert_eq!(ps[3].eval_int(25), toriclib::algebra::rat_from_int(19575));
    let names: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"Whitney on T^2_3"));
    assert!(names.contains(&"|GB| = |BG| n=5 k=3"));

    let o = run(&[
        "chromatic",
        "--dim",
        "1",
        "--max-weight",
        "2",
        "--verify-n",
        "6",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("Whitney on C6"));

    let o = run(&["chromatic", "--max-weight", "0", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(polys(&json(&o)), vec![Poly::one()]);
}

#[test]
fn exit_codes_for_bad_input_and_guards() {
    let o = run(&["poly", "--input", "/definitely/not/here.json"]);
    assert_eq!(o.status.code(), Some(2));
    let bad = write_temp(
        "bad.json",
        r#"{"dim": 2, "figures": [{"vertices": [[0,0,0]]}]}"#,
    );
    assert_eq!(
        run(&["poly", "--input", bad.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    let unknown = write_temp("unknown.json", r#"{"dim": 2, "shapes": []}"#);
    assert_eq!(
        run(&["poly", "--input", unknown.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );

    let o = run(&["sequence", "--input", "edges2d", "--max-weight", "8"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--allow-large"));
    let o = run(&["chromatic", "--max-weight", "6"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn duplicate_catalog_figure_is_input_error() {
    // two translates of the same domino are one catalog figure listed twice
    let dup = write_temp(
        "dup.json",
        r#"{"dim": 2, "figures": [{"vertices": [[0,0],[1,0]]}, {"vertices": [[5,5],[6,5]]}]}"#,
    );
    assert_eq!(
        run(&["sequence", "--input", dup.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn selftest_scorecard() {
    let o = run(&["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert_eq!(
        out.lines().filter(|l| l.starts_with("[PASS]")).count(),
        9,
        "{out}"
    );
    assert!(out.contains("9/9 criteria passed"));
}
