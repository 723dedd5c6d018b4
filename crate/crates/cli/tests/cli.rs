use std::collections::BTreeSet;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_springer-dual")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dual_of_steinberg() {
    let o = run(&["dual", "--group", "Sp", "--lambda", "2", "--eps", "2=+1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), r#"{"lambda":[1,1],"eps":{}}"#);
}

#[test]
fn dual_from_json_input() {
    let o = run(&["dual", "--input", r#"{"group":"SO","lambda":[3],"eps":{"3":1}}"#]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), r#"{"lambda":[1,1,1],"eps":{"1":1}}"#);
}

#[test]
fn exceptional_lookup() {
    let o = run(&["exceptional", "G2", "G_2(a_1)", "(21)"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dual_orbit"], "A_1");
    assert_eq!(v["dual_eps"], "∅");
    let o = run(&["exceptional", "G2", "--format", "tsv"]);
    assert_eq!(stdout(&o).lines().count(), 8);
}

#[test]
fn unknown_exceptional_key_is_a_domain_error() {
    let o = run(&["exceptional", "G2", "G_3", "(21)"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn invalid_input_exits_one() {
    assert_eq!(run(&["max", "--group", "Sp", "--lambda", "3"]).status.code(), Some(1));
    assert_eq!(run(&["max", "--group", "Sp", "--lambda", "2", "--eps", "4=+1"]).status.code(), Some(1));
    assert_eq!(run(&["dual", "--input", "{not json"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--group", "SO", "--max-size", "10"]).status.code(), Some(1));
}

#[test]
fn verify_passes() {
    let o = run(&["verify", "--group", "Sp", "--max-size", "8", "--format", "pretty"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all families pass"));
    let o = run(&["verify", "--group", "SO", "--max-size", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "all families pass");
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
    assert_eq!(run(&["verify", "--group", "A", "--max-size", "5"]).status.code(), Some(0));
}

#[test]
fn output_is_reproducible() {
    let args = ["table", "--group", "SO", "--max-size", "7", "--format", "tsv"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["verify", "--group", "Sp", "--max-size", "6", "--no-timing"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn table_lists_every_pair_once() {
    let o = run(&["table", "--group", "Sp", "--max-size", "8"]);
    assert!(o.status.success());
    let rows: Vec<serde_json::Value> = serde_json::from_str(&stdout(&o)).unwrap();
    let orbits: BTreeSet<String> = rows.iter().map(|r| r["orbit"].to_string()).collect();
    assert_eq!(orbits.len(), rows.len());
    // 1 + 2 + 7 + 16 + 33 symplectic pairs of total 0, 2, 4, 6, 8.
    assert_eq!(rows.len(), 59);
    assert!(rows.iter().all(|r| r["dual"].is_object() && r["bipartition"].is_object()));
}

#[test]
fn gsc_both_directions() {
    let o = run(&["gsc", "--group", "SO", "--lambda", "3,1,1", "--eps", "3=+1,1=-1"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let (size, defect) = (v["family"]["size"].to_string(), v["family"]["defect"].to_string());
    let alpha: Vec<String> = v["bipartition"]["alpha"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
    let beta: Vec<String> = v["bipartition"]["beta"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
    let (a, b) = (alpha.join(","), beta.join(","));
    let mut args = vec!["gsc", "--group", "SO", "--size", &size, "--defect", &defect];
    args.extend(["--alpha", &a, "--beta", &b]);
    let back = run(&args);
    assert!(back.status.success(), "{}", String::from_utf8_lossy(&back.stderr));
    let w: serde_json::Value = serde_json::from_str(&stdout(&back)).unwrap();
    assert_eq!(w["orbit"], v["orbit"]);
}

#[test]
fn az_from_flags_and_json() {
    let o = run(&["az", "--gl", "1,2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lambda"], serde_json::json!([1, 1, 1, 1, 1, 1]));
    assert_eq!(v["orbit_only"], true);
    let o = run(&["az", "--input", r#"{"plus_block":{"lambda":[2],"eps":{"2":1}},"n":1}"#]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lambda"], serde_json::json!([1, 1]));
    assert_eq!(run(&["az", "--input", r#"{"gl_blocks":[[2,1]],"n":3}"#]).status.code(), Some(1));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = std::env::temp_dir().join(format!("springer-dual-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("min.json");
    let o = run(&["min", "--group", "SO", "--lambda", "3", "--eps", "3=+1", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains(r#""lambda":[1,1,1]"#));
    std::fs::remove_dir_all(&dir).unwrap();
}
