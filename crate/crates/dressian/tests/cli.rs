use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dressian"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(name: &str, text: &str) -> PathBuf {
    let p = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn fixture(name: &str) -> PathBuf {
    let o = bin(&["fixture", name]);
    assert!(o.status.success());
    write(&format!("{name}.json"), &stdout(&o))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_bundled_weight() {
    let p = fixture("delta48-weight");
    let o = bin(&["check", s(&p)]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("in Dressian\nsignature "));
}

#[test]
fn check_outside_dressian() {
    let p = write("bad24.json", r#"{"k":2,"n":4,"values":["-1",0,0,0,0,0]}"#);
    let o = bin(&["check", s(&p)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("quad=(1,2,3,4)"));
}

#[test]
fn malformed_input_exits_2() {
    let p = write("decimal.json", r#"{"k":2,"n":4,"values":["0.5",0,0,0,0,0]}"#);
    assert_eq!(bin(&["check", s(&p)]).status.code(), Some(2));
    let p = write("short.json", r#"{"k":2,"n":4,"values":[0,0]}"#);
    assert_eq!(bin(&["check", s(&p)]).status.code(), Some(2));
    assert_eq!(bin(&["check", "/nonexistent/weight.json"]).status.code(), Some(2));
    assert_eq!(bin(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn subdivide_zero_weight() {
    let zeros = ["0"; 20].join(",");
    let p = write("zero36.json", &format!(r#"{{"k":3,"n":6,"values":[{zeros}]}}"#));
    let o = bin(&["subdivide", "--certify-matroidal", s(&p)]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["cells"].as_array().unwrap().len(), 1);
    assert_eq!(doc["cells"][0].as_array().unwrap().len(), 20);
    assert_eq!(doc["matroidal"], serde_json::json!([true]));
}

#[test]
fn compare_with_itself() {
    let p = fixture("cone5");
    let o = bin(&["compare", s(&p), s(&p)]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "identical");
}

#[test]
fn metrize_pi_arrange_roundtrip() {
    let abs = fixture("cone0");
    let o = bin(&["metrize", s(&abs)]);
    assert!(o.status.success());
    let metric = write("cone0-metric.json", &stdout(&o));
    let o = bin(&["pi", s(&metric)]);
    assert!(o.status.success());
    let w = write("cone0-weight.json", &stdout(&o));
    assert_eq!(bin(&["check", s(&w)]).status.code(), Some(0));
    let o = bin(&["arrange", s(&w)]);
    assert!(o.status.success());
    let back = write("cone0-back.json", &stdout(&o));
    let o = bin(&["compare", s(&abs), s(&back)]);
    assert_eq!(stdout(&o).trim(), "identical");
}

#[test]
fn pi_rejects_incompatible_lengths() {
    // the unit-length fixture is not compatible as a metric arrangement
    let abs = fixture("cone0");
    let o = bin(&["pi", s(&abs)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not compatible"));
}

#[test]
fn adjacent_on_caterpillar_weight() {
    // negated tree metric of C(12,3,45) with unit lengths
    let p = write("cat25.json", r#"{"k":2,"n":5,"values":["-2","-3","-4","-4","-3","-4","-4","-3","-3","-2"]}"#);
    let o = bin(&["adjacent", s(&p)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["facets"], 2);
    let nbs = doc["neighbours"].as_array().unwrap();
    assert_eq!(nbs.len(), 4);
    assert!(nbs.iter().all(|n| n["classification"] == "generalized-whitehead"));
}

#[test]
fn adjacent_rejects_non_maximal() {
    let p = write("zero25.json", &format!(r#"{{"k":2,"n":5,"values":[{}]}}"#, ["0"; 10].join(",")));
    assert_eq!(bin(&["adjacent", s(&p)]).status.code(), Some(1));
}

#[test]
fn ingest_quartet_fan() {
    let p = write(
        "fan24.json",
        r#"{"k":2,"n":4,
            "rays":[[0,-1,-1,-1,-1,0],[-1,0,-1,-1,0,-1],[-1,-1,0,0,-1,-1]],
            "lineality":[[1,1,1,0,0,0],[1,0,0,1,1,0],[0,1,0,1,0,1],[0,0,1,0,1,1]],
            "cones":[[0],[1],[2]]}"#,
    );
    let o = bin(&["ingest-fan", s(&p)]);
    assert!(o.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let sigs: Vec<&str> = doc.as_array().unwrap().iter().map(|c| c["signature"].as_str().unwrap()).collect();
    assert_eq!(sigs, ["c", "b", "a"]);
    let p = write("fan-bad.json", r#"{"k":2,"n":4,"rays":[[0,0,0,0,0,0]],"cones":[[3]]}"#);
    assert_eq!(bin(&["ingest-fan", s(&p)]).status.code(), Some(2));
}
