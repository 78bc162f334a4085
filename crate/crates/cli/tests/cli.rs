use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn floq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_floq")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

#[test]
fn solve_reports_the_four_site_counts() {
    let out = floq(&["solve", "--n", "4"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["summary"]["mult_at_zero"], 16);
    assert_eq!(v["summary"]["unique"], 9);
    let c = &v["points"][0]["coords"][0];
    assert!(c.is_array() && c.as_array().unwrap().len() == 2);
}

#[test]
fn solve_output_is_byte_identical() {
    let a = floq(&["solve", "--n", "5", "--seed", "3"]);
    let b = floq(&["solve", "--n", "5", "--seed", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exact_verification_of_the_paired_potential() {
    let v = json(&floq(&["verify", "--n", "4", "--potential", &data("flmrp4.json"), "--exact"]));
    assert_eq!(v["isospectral"], true);
    assert!(v["residuals"].as_array().unwrap().iter().all(|r| r == "0"));
}

#[test]
fn orbit_of_the_paired_potential() {
    let v = json(&floq(&["orbit", "--potential", &data("flmrp4.json"), "--exact"]));
    assert_eq!(v["size"], 8);
}

#[test]
fn hilbert_value_of_the_extended_system() {
    let v = json(&floq(&["hilbert", "--n", "4", "--s", "10", "--variant", "extended"]));
    assert_eq!(v["value"], 192);
}

#[test]
fn groebner_leading_terms() {
    let v = json(&floq(&["groebner", "--n", "4"]));
    assert_eq!(v["summary"]["lt_list"], serde_json::json!(["v1", "v2^2", "v3^3", "v4^4"]));
    assert_eq!(v["summary"]["basis_size"], 24);
}

#[test]
fn lattice_report_shape() {
    let v = json(&floq(&["lattice", "--generators", "3 0; 1 1"]));
    for key in ["lattice", "hnf", "index", "verdict", "survivors", "samples", "candidates", "total_multiplicity"] {
        assert!(!v[key].is_null(), "{key}");
    }
    assert_eq!(v["index"], 3);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(floq(&["solve", "--bogus"]).status.code(), Some(2));
    let out = floq(&["lattice", "--generators", "1 2; 2 4"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "singular_lattice");
}

#[test]
fn computation_failures_exit_with_one() {
    let out = floq(&["verify", "--n", "4", "--potential", "/nonexistent/potential.json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["error"]["kind"], "io");
}

#[test]
fn thread_count_from_the_environment() {
    let run = |threads: &str| Command::new(env!("CARGO_BIN_EXE_floq")).env("FLOQ_THREADS", threads).args(["solve", "--n", "4"]).output().unwrap();
    let one = run("1");
    assert!(one.status.success());
    assert_eq!(one.stdout, floq(&["solve", "--n", "4"]).stdout);
    assert_eq!(run("many").status.code(), Some(2));
}

#[test]
fn figures_write_csv_files() {
    let dir = std::env::temp_dir().join(format!("floq-figures-{}", std::process::id()));
    let out = floq(&["figures", "--n", "4", "--out-dir", dir.to_str().unwrap()]);
    assert!(out.status.success());
    let values = std::fs::read_to_string(dir.join("values.csv")).unwrap();
    assert!(values.lines().count() > 1);
    assert!(std::fs::read_dir(dir.join("points")).unwrap().count() > 0);
    std::fs::remove_dir_all(&dir).unwrap();
}
