//! End-to-end runs of the `weyrkit` binary on fixture files.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::tempdir;
use weyrkit::{Matrix, Rational};
use weyrkit_cli::MatrixFile;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_weyrkit"));
    for a in args {
        if a.ends_with(".json") && !a.contains('/') {
            cmd.arg(fixture(a));
        } else {
            cmd.arg(a);
        }
    }
    cmd.output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = run(&all);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn numbers(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}

#[test]
fn structure_of_example_a() {
    let v = json(&["structure", "example_a.json"]);
    let e = &v["eigenvalues"][0];
    assert_eq!(e["eigenvalue"], "2");
    assert_eq!(e["index"], 3);
    assert_eq!(numbers(&e["nullities"]), vec![2, 4, 5]);
    assert_eq!(numbers(&e["weyr"]), vec![2, 2, 1]);
    assert_eq!(numbers(&e["segre"]), vec![3, 2]);

    let human = stdout(&run(&["structure", "example_a.json"]));
    assert!(human.contains("Weyr characteristic     (2,2,1)"));
    assert!(human.contains("nullity (A - λI)^3      5"));
}

#[test]
fn structure_of_zero_matrix() {
    let v = json(&["structure", "zero2.json"]);
    assert_eq!(v["eigenvalues"][0]["eigenvalue"], "0");
    assert_eq!(numbers(&v["eigenvalues"][0]["weyr"]), vec![2]);
}

#[test]
fn kernel_dims_default_to_the_index() {
    let v = json(&["--oracle", "kernel-dims", "example_a.json", "example_b.json"]);
    assert_eq!(v["k_max"], 4);
    assert_eq!(numbers(&v["totals"]), vec![10, 18, 23, 25]);
    assert_eq!(numbers(&v["oracle"]), vec![10, 18, 23, 25]);
    assert!(v["verdicts"].as_array().unwrap().iter().all(|s| s == "MATCH"));

    let human = stdout(&run(&["--oracle", "kernel-dims", "example_a.json", "example_b.json"]));
    let last = human.lines().last().unwrap();
    assert_eq!(last.split_whitespace().collect::<Vec<_>>(), ["4", "25", "25", "25", "MATCH"]);
}

#[test]
fn kernel_dims_of_disjoint_spectra() {
    let v = json(&["kernel-dims", "diag12.json", "identity3.json", "--k", "3"]);
    // eigenvalue 1 is shared, so only the (1,1) pair contributes
    assert_eq!(numbers(&v["totals"]), vec![3, 3, 3]);
    let v = json(&["kernel-dims", "zero2.json", "identity3.json", "--k", "3"]);
    assert_eq!(numbers(&v["totals"]), vec![0, 0, 0]);
    assert!(v["pairs"].as_array().unwrap().is_empty());
}

#[test]
fn bases_verify_in_both_coordinates() {
    for (k, count) in [("1", 10), ("2", 18)] {
        for coords in ["weyr", "original"] {
            let v = json(&["basis", "example_a.json", "example_b.json", "--k", k, "--coords", coords]);
            assert_eq!(v["count"], count);
            assert_eq!(v["holds"], true, "k={k} {coords}");
            assert_eq!(v["elements"].as_array().unwrap().len(), count);
        }
    }
    let v = json(&["basis", "example_a.json", "example_b.json", "--k", "2"]);
    let symbols: Vec<&str> = v["elements"].as_array().unwrap().iter().map(|e| e["symbol"].as_str().unwrap()).collect();
    assert!(symbols.contains(&"(E21+2E32)⊠e11"));
}

#[test]
fn invariants_and_comparisons() {
    let v = json(&["--oracle", "invariants", "example_a.json", "example_b.json"]);
    assert_eq!(v["table"][0]["eigenvalue"], "0");
    assert_eq!(numbers(&v["table"][0]["characteristic"]), vec![10, 8, 5, 2]);
    assert_eq!(v["oracle_match"], true);

    let v = json(&["invariants", "diag12.json", "one1.json"]);
    let table: Vec<(String, Vec<u64>)> = v["table"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| (e["eigenvalue"].as_str().unwrap().to_string(), numbers(&e["characteristic"])))
        .collect();
    assert_eq!(table, vec![("0".to_string(), vec![1]), ("1".to_string(), vec![1])]);

    let same = run(&["compare", "example_a.json", "example_b.json", "example_a.json", "example_b.json"]);
    assert_eq!(same.status.code(), Some(0));
    assert!(stdout(&same).starts_with("SIMILAR"));

    let differ = run(&["--json", "compare", "example_a.json", "example_b.json", "example_a.json", "b_prime.json"]);
    assert_eq!(differ.status.code(), Some(3));
    let v: Value = serde_json::from_str(&stdout(&differ)).unwrap();
    assert_eq!(v["similar"], false);
    assert_eq!(v["witness"]["eigenvalue"], "0");
    assert_eq!(v["witness"]["k"], 2);
    assert_eq!((v["witness"]["first"].as_u64(), v["witness"]["second"].as_u64()), (Some(8), Some(9)));
}

#[test]
fn centralizers() {
    let v = json(&["--oracle", "centralizer", "example_a.json"]);
    assert_eq!(v["dim"], 9);
    assert_eq!(v["oracle"], 9);
    assert_eq!(json(&["centralizer", "identity3.json"])["dim"], 9);
    assert_eq!(json(&["centralizer", "diag12.json"])["dim"], 2);
}

#[test]
fn weyr_form_is_verified() {
    let v = json(&["form", "example_b.json"]);
    assert_eq!(v["verified"], true);
    let w = &v["weyr"];
    assert_eq!(w[0][3], "1");
    assert_eq!(w[1][4], "1");
    assert_eq!(w[4][4], "2");
}

#[test]
fn declared_structures_are_checked() {
    let ok = run(&["--declared", "example_a_structure.json", "structure", "example_a.json"]);
    assert_eq!(ok.status.code(), Some(0));
    let wrong = run(&["--declared", "wrong_structure.json", "structure", "example_a.json"]);
    assert_eq!(wrong.status.code(), Some(2));
    // "-" leaves the first operand computed
    let second = run(&[
        "--declared", "-", "--declared", "wrong_structure.json", "kernel-dims", "example_a.json", "example_b.json",
    ]);
    assert_eq!(second.status.code(), Some(0));
    let too_many = run(&["--declared", "-", "--declared", "-", "structure", "example_a.json"]);
    assert_eq!(too_many.status.code(), Some(2));
}

#[test]
fn exit_codes_for_bad_input() {
    assert_eq!(run(&["structure", "rotation.json"]).status.code(), Some(4));
    assert_eq!(run(&["structure", "rect.json"]).status.code(), Some(2));
    assert_eq!(run(&["structure", "/nonexistent/a.json"]).status.code(), Some(2));
    assert_eq!(run(&["kernel-dims", "example_a.json", "example_b.json", "--k", "0"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    let irrational = run(&["structure", "rotation.json"]);
    assert!(String::from_utf8_lossy(&irrational.stderr).contains("x^2 + 1"));
}

#[test]
fn matrix_files_round_trip() {
    let dir = tempdir().unwrap();
    let path = dir.path().join("m.json");
    let m = Matrix::from_fn(3, 2, |i, j| Rational::new(7 * i as i64 - 3 * j as i64, 1 + 2 * j as i64));
    MatrixFile::save(&m, &path).unwrap();
    assert_eq!(MatrixFile::load(&path).unwrap(), m);
}

#[test]
fn output_is_deterministic() {
    let args = ["basis", "example_a.json", "example_b.json", "--k", "3", "--coords", "original"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
