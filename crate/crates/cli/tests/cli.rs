use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tracegenus"));
    cmd.args(args).env_remove("TRACEGENUS_CACHE_DIR");
    match cache {
        Some(dir) => cmd.arg("--cache-dir").arg(dir),
        None => cmd.arg("--no-cache"),
    };
    cmd.output().expect("binary runs")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON on stdout")
}

const KLEIN_K: &str = "x^4 - 41*x^2 + 144";
const KLEIN_L: &str = "x^4 - x^3 - 46*x^2 - 115*x - 35";
const SEXTIC_K: &str = "x^6 - x^5 - 2*x^4 + x^3 + 7*x^2 - 6*x + 4";
const SEXTIC_L: &str = "x^6 - 3*x^5 + 10*x^4 - 15*x^3 + 19*x^2 - 12*x + 3";

#[test]
fn analyze_klein_quartic() {
    let o = run(&["analyze", KLEIN_K], None);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["disc"], "1221025");
    assert_eq!(v["signature"], serde_json::json!([4, 0]));
    assert_eq!(v["gamma"]["is_gamma"], false);
}

#[test]
fn analyze_sextic_reports_exceptional_prime() {
    let v = json(&run(&["analyze", SEXTIC_K], None));
    assert_eq!(v["disc"], "-309123");
    assert_eq!(v["signature"], serde_json::json!([0, 3]));
    assert_eq!(v["gamma"]["exceptional"], "107");
}

#[test]
fn analyze_gaussian_field() {
    let v = json(&run(&["analyze", "x^2 + 1"], None));
    assert_eq!(v["disc"], "-4");
    assert_eq!(v["trace_form"]["gram"], serde_json::json!([["2", "0"], ["0", "-2"]]));
}

#[test]
fn input_errors_have_exit_codes() {
    let o = run(&["analyze", "x^2 + y"], None);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["analyze", "x^4 - 1"], None);
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(json(&o)["kind"], "reducible");
    assert!(json(&o)["factors"].as_array().unwrap().len() >= 2);
    let o = run(&["analyze", "2*x^2 + 1"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compare_exit_codes() {
    let o = run(&["compare", KLEIN_K, KLEIN_L], None);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    assert_eq!(v["spinor"]["verdict"], "different");
    let five = v["spinor"]["per_prime"].as_array().unwrap().iter().find(|c| c["p"] == "5").unwrap();
    assert_eq!(five["equal"], false);

    let o = run(&["compare", SEXTIC_K, SEXTIC_L], None);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["theorem"]["isometry_claim"], true);
    assert_eq!(v["cross_validation"]["consistent"], true);

    assert_eq!(run(&["compare", SEXTIC_K, SEXTIC_K], None).status.code(), Some(0));
    assert_eq!(run(&["compare", "x^2 - 5", "x^2 - 5"], None).status.code(), Some(4));
}

#[test]
fn human_output_is_a_table() {
    let o = run(&["--human", "analyze", KLEIN_K], None);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("1221025 = 5^2 * 13^2 * 17^2"));
    assert!(text.lines().all(|l| l == l.trim_end()));
}

#[test]
fn scan_small_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("four.csv");
    std::fs::write(
        &path,
        format!("label,polynomial\nk,{KLEIN_K}\nl,{KLEIN_L}\nsk,{SEXTIC_K}\nsl,{SEXTIC_L}\n"),
    )
    .unwrap();
    let o = run(&["scan", path.to_str().unwrap(), "--pairs"], None);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["summary"]["analyzed"], 4);
    assert_eq!(v["summary"]["pairs"]["applicable"], 1);
    assert_eq!(v["summary"]["pairs"]["inconsistencies"], 0);
    assert_eq!(v["records"][2]["label"], "sk");

    std::fs::write(&path, "").unwrap();
    let o = run(&["scan", path.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["summary"]["records"], 0);

    std::fs::write(&path, "a,x^2 - 2\nb,x^2 - 1\n").unwrap();
    let o = run(&["scan", path.to_str().unwrap()], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["summary"]["failures"], 1);
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let uncached = run(&["analyze", SEXTIC_L], None);
    let first = run(&["analyze", SEXTIC_L], Some(&cache));
    let second = run(&["analyze", SEXTIC_L], Some(&cache));
    assert_eq!(uncached.stdout, first.stdout);
    assert_eq!(first.stdout, second.stdout);
    assert_eq!(std::fs::read_dir(&cache).unwrap().count(), 1);

    let entry = std::fs::read_dir(&cache).unwrap().next().unwrap().unwrap().path();
    std::fs::write(&entry, "garbage").unwrap();
    let o = run(&["analyze", SEXTIC_L], Some(&cache));
    assert_eq!(o.status.code(), Some(0));
    assert!(json(&o)["cache_warning"].is_string());
    assert!(String::from_utf8_lossy(&o.stderr).contains("warning"));
    assert_eq!(run(&["analyze", SEXTIC_L], Some(&cache)).stdout, first.stdout);
}

#[test]
fn shipped_corpus_scans_cleanly() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus/examples.csv");
    let v = json(&run(&["scan", path, "--pairs"], None));
    assert_eq!(v["summary"]["records"], 6);
    assert_eq!(v["summary"]["failures"], 0);
    assert_eq!(v["summary"]["pairs"]["applicable"], 1);
}
