use std::path::PathBuf;
use std::process::{Command, Output};

fn nonorient(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nonorient"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nonorient-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn h1_text() {
    let o = nonorient(&["h1", "--kind", "pmk", "--g", "3", "--s", "0", "--n", "2", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("Z2^3"));

    let o = nonorient(&["h1", "--kind", "m", "--g", "5", "--s", "3", "--n", "2"]);
    assert_eq!(stdout(&o).lines().next(), Some("Z2^4"));
}

#[test]
fn invalid_input_exits_2() {
    assert_eq!(nonorient(&["h1", "--kind", "m", "--g", "3", "--s", "0", "--n", "1"]).status.code(), Some(2));
    assert_eq!(nonorient(&["h1", "--g", "2"]).status.code(), Some(2));
    assert_eq!(nonorient(&["h1", "--kind", "xx", "--g", "3"]).status.code(), Some(2));
    assert_eq!(nonorient(&["h1", "--kind", "pm", "--g", "3", "--n", "2", "--k", "1"]).status.code(), Some(2));
    assert_eq!(nonorient(&["bogus"]).status.code(), Some(2));
    assert_eq!(nonorient(&["schreier"]).status.code(), Some(2));
}

#[test]
fn h1_json_schema() {
    let o = nonorient(&["h1", "--g", "7", "--s", "2", "--n", "3", "--k", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["basis", "character_rank", "free_rank", "invariant_factors", "spec", "verified"]);
    assert_eq!(v["invariant_factors"], serde_json::json!([2, 2, 2]));
    assert_eq!(v["verified"], true);
    assert_eq!(v["spec"]["kind"], "pmk");
}

#[test]
fn table_examples() {
    let o = nonorient(&["table", "--g-max", "3", "--s-max", "0", "--n-max", "0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "kind,g,s,n,k,factors,character_rank,verified\npm,3,0,0,0,2,2,true\n");

    let o = nonorient(&["table", "--g-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "kind,g,s,n,k,factors,character_rank,verified\n");
}

#[test]
fn table_is_deterministic() {
    let args = ["table", "--g-max", "5", "--s-max", "2", "--n-max", "3", "--format", "csv"];
    let a = nonorient(&args);
    let b = nonorient(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    assert!(text.lines().skip(1).all(|l| l.ends_with(",true")));
    assert!(text.contains("\nm,4,1,2,0,5,5,true\n"));
}

#[test]
fn verify_checks() {
    let o = nonorient(&["verify", "lantern"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("lantern: PASS (frozen artin_sign=+1"));

    let o = nonorient(&["verify", "lemmas", "--g", "4", "--s", "2", "--n", "3", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.contains(": PASS")));
    assert!(text.contains("lemma boundary-sum: PASS"));

    let o = nonorient(&["verify", "all", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "PASS");
}

#[test]
fn gens_and_tower() {
    let o = nonorient(&["gens", "--g", "3", "--n", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 7);

    let o = nonorient(&["schreier", "--tower", "--g", "3", "--n", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "k,count\n0,7\n1,13\n2,25\n");
}

#[test]
fn schreier_from_json_file() {
    let input = scratch("z2.json");
    std::fs::write(
        &input,
        r#"{
  "alphabet": ["a", "b", "v"],
  "quotient": {"elements": ["0", "1"], "table": [["0", "1"], ["1", "0"]]},
  "images": {"a": "0", "b": "0", "v": "1"},
  "transversal": {"0": [], "1": ["v"]}
}"#,
    )
    .unwrap();
    let out = scratch("z2.txt");
    let o = nonorient(&["schreier", "--input", input.to_str().unwrap(), "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text, "a\nb\nv a v^-1\nv b v^-1\nv v\n");

    std::fs::write(&input, "{\"alphabet\": 3}").unwrap();
    let o = nonorient(&["schreier", "--input", input.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
