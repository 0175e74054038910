use std::process::{Command, Output};

use serde_json::Value;

fn geproci(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geproci")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let out = geproci(&a);
    let v = serde_json::from_slice(&out.stdout).expect("json report");
    (v, out.status.code().expect("exit code"))
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn gen_builtins() {
    let d4 = stdout(&geproci(&["gen", "d4"]));
    let points: Vec<&str> = d4.lines().filter(|l| l.starts_with("point")).collect();
    assert_eq!(points.len(), 12);
    assert_eq!(points[0], r#"point ["1","1","0","0"]"#);
    assert!(stdout(&geproci(&["gen", "harmonic-v2"])).contains(r#"point ["1","-1","-1","-1"]"#));
    let grid = stdout(&geproci(&["gen", "grid:3x4"]));
    assert_eq!(grid.lines().filter(|l| l.starts_with("point")).count(), 12);
    assert_eq!(grid.lines().filter(|l| l.starts_with("group")).count(), 7);
    assert_eq!(geproci(&["gen", "harmonic-v3"]).status.code(), Some(2));
}

#[test]
fn verify_canonical_and_d4() {
    let (v, code) = json(&["verify", "anharmonic", "4", "4"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    assert_eq!(r["geproci"]["verdict"], "geproci");
    assert_eq!(r["half_grid"], true);
    assert!(r["grid"].is_null());
    assert_eq!(r["split_witnesses"][0]["f_factors"].as_array().unwrap().len(), 4);
    let (v, code) = json(&["verify", "d4", "3", "4"]);
    assert_eq!(code, 0);
    assert!(v["result"]["grid"].is_null());
    assert_eq!(v["result"]["geproci"]["trials"][0]["hilbert_function"], serde_json::json!([1, 3, 6, 9, 11, 12, 12, 12]));
}

#[test]
fn verify_random_points_is_negative() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("random.gpc");
    let mut src = String::from("field t^2-t+1\n");
    // integer points on the moment curve (1, t, t², t³) are in general position
    for t in 1..=16i64 {
        src.push_str(&format!("point [\"1\",\"{}\",\"{}\",\"{}\"]\n", t, t * t, t * t * t));
    }
    std::fs::write(&path, src).unwrap();
    let out = geproci(&["verify", path.to_str().unwrap(), "4", "4"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("verdict: not-geproci"));
}

#[test]
fn classify_cases() {
    let (v, code) = json(&["classify", "anharmonic"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["case"], "anharmonic");
    assert_eq!(v["result"]["beta"], "(2,3,1,4)");
    assert_eq!(v["result"]["checks_hold"], true);
    let (v, _) = json(&["classify", "harmonic-v2"]);
    assert_eq!(v["result"]["case"], "harmonic");
    assert_eq!(v["result"]["beta"], "(3,4,2,1)");
    let (v, code) = json(&["classify", "grid:4x4"]);
    assert_eq!(code, 2);
    assert!(v["error"]["message"].as_str().unwrap().starts_with("OnCommonQuadric"));
    assert_eq!(geproci(&["classify", "d4"]).status.code(), Some(2));
}

#[test]
fn misc_commands() {
    let (v, code) = json(&["table1"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["diffs"], serde_json::json!([]));
    assert_eq!(json(&["equiv", "harmonic-v1", "harmonic-v2"]).1, 0);
    let (v, code) = json(&["equiv", "anharmonic", "harmonic-v2"]);
    assert_eq!(code, 1);
    assert_eq!(v["result"]["equivalent"], false);
    let (v, code) = json(&["cross-ratio", "1:0:0:0", "0:1:0:0", "1:1:0:0", "1:-1:0:0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["value"], "-1");
    assert_eq!(v["result"]["type"], "harmonic");
    let (v, _) = json(&["cross-ratio", "(-1:0:0:0)", "0:1:0:0", "(-2:2:0:0)", "1:2:0:0"]);
    assert_eq!(v["result"]["value"], "-1/2");
    assert_eq!(geproci(&["cross-ratio", "1:0:0:0", "0:1:0:0", "1:1:0:0", "0:0:1:0"]).status.code(), Some(2));
    let (v, code) = json(&["transversals", "1:0:0:0/0:1:0:0", "0:0:1:0/0:0:0:1", "1:0:1:0/0:1:0:1", "1:0:0:-3/0:1:1:0"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["transversals"]["kind"], "split");
    let (v, code) = json(&["derive-harmonic"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["solutions"][0]["d"][0], "(2:1:0:-1)");
    assert_eq!(v["result"]["equivalent"], true);
}

#[test]
fn reports_are_deterministic() {
    let a = geproci(&["verify", "harmonic-v2", "4", "4", "--format", "json", "--seed", "17"]);
    let b = geproci(&["verify", "harmonic-v2", "4", "4", "--format", "json", "--seed", "17"]);
    assert_eq!(a.stdout, b.stdout);
    let c = geproci(&["verify", "harmonic-v2", "4", "4", "--format", "json", "--seed", "18"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn output_file_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("h.gpc");
    assert!(geproci(&["gen", "harmonic-v1", "--output", out.to_str().unwrap()]).status.success());
    assert_eq!(geproci(&["classify", out.to_str().unwrap()]).status.code(), Some(0));
    let bad = dir.path().join("bad.gpc");
    std::fs::write(&bad, "field t^2-t+1\npoint [\"1\",\"0\",\"0\",\"0\"]\npoint [\"1\",\"0\"]\n").unwrap();
    let r = geproci(&["verify", bad.to_str().unwrap(), "1", "2"]);
    assert_eq!(r.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&r.stderr).contains("line 3"));
}
