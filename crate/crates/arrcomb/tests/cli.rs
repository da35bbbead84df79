use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn arrcomb(args: &[&str]) -> Output {
    arrcomb_with(args, |_| {})
}

fn arrcomb_with(args: &[&str], setup: impl FnOnce(&mut Command)) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_arrcomb"));
    cmd.args(args).env_remove("ARRCOMB_CACHE_DIR");
    setup(&mut cmd);
    cmd.output().expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).expect("stderr is JSON")
}

fn gen(dir: &Path, family: &str, n: usize, a: i64) -> PathBuf {
    let path = dir.join(format!("{family}{a}-{n}.json"));
    let out = arrcomb(&["gen", "--family", family, "--n", &n.to_string(), "--a", &a.to_string(), "-o", path.to_str().unwrap()]);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    path
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn shi_table_csv() {
    let dir = TempDir::new().unwrap();
    let shi = gen(dir.path(), "shi", 2, 1);
    let out = arrcomb(&["table", s(&shi)]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "d,0,1,2,b\n0,0,0,0,0\n1,0,2,0,2\n2,0,1,2,1\n");
}

#[test]
fn braid_whitney_polynomial() {
    let dir = TempDir::new().unwrap();
    let braid = gen(dir.path(), "braid", 2, 1);
    let w = stdout_json(&arrcomb(&["poly", s(&braid), "--whitney"]));
    let terms: Vec<(u64, u64, &str)> = w["terms"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (t["x"].as_u64().unwrap(), t["t"].as_u64().unwrap(), t["coeff"].as_str().unwrap()))
        .collect();
    assert_eq!(terms, [(0, 1, "-1"), (0, 2, "1"), (1, 1, "1")]);
    let chi = stdout_json(&arrcomb(&["poly", s(&braid), "--char"]));
    assert_eq!(chi["terms"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_stirling_on_shi() {
    let out = arrcomb(&["verify", "--family", "shi", "--n-max", "3", "--checks", "stirling"]);
    let reports = stdout_json(&out);
    let reports = reports.as_array().unwrap();
    assert!(reports.iter().all(|r| r["status"] == "pass"));
    let values: Vec<(String, Value)> = reports
        .iter()
        .filter(|r| r["instance"].as_str().unwrap().starts_with("shi a=1 n=2"))
        .map(|r| (r["instance"].as_str().unwrap().to_string(), r["lhs"].clone()))
        .collect();
    assert_eq!(values.len(), 2);
    assert_eq!(values[0].1, 1);
    assert_eq!(values[1].1, 2);
    let text = String::from_utf8(out.stdout).unwrap();
    let at = |key: &str| text.find(&format!("\"{key}\"")).unwrap();
    assert!(at("check") < at("instance") && at("instance") < at("status") && at("status") < at("lhs"));
}

#[test]
fn verify_every_check_on_small_families() {
    for family in ["braid", "shi", "catalan", "semiorder", "linial"] {
        let out = arrcomb(&["verify", "--family", family, "--n-max", "3", "--trunc", "3"]);
        let reports = stdout_json(&out);
        assert!(reports.as_array().unwrap().iter().all(|r| r["status"] == "pass"), "{family}");
    }
}

#[test]
fn verify_random_specs_is_seeded() {
    let args = ["verify", "--random", "4", "--n-max", "3", "--seed", "11", "--checks", "levels,bijection"];
    let first = arrcomb(&args);
    let second = arrcomb(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert!(!stdout_json(&first).as_array().unwrap().is_empty());
}

#[test]
fn unknown_check_names_are_rejected() {
    let out = arrcomb(&["verify", "--family", "shi", "--checks", "stirling,nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "malformed_input");
    assert!(out.stdout.is_empty());
}

#[test]
fn gen_spec_validates_and_canonicalizes() {
    let dir = TempDir::new().unwrap();
    let hand = write(
        dir.path(),
        "hand.json",
        r#"{"ambient_dim": 3, "kind": "deformed_braid",
            "offsets": {"1,2": ["0", "1"], "1,3": [0, "1/2"], "2,3": ["-1"]}}"#,
    );
    let json = stdout_json(&arrcomb(&["gen", "--spec", s(&hand)]));
    assert_eq!(json["offsets"]["1,3"], serde_json::json!(["0", "1/2"]));
    assert_eq!(json["offsets"]["2,3"], serde_json::json!(["-1"]));
    assert_eq!(json["hyperplanes"].as_array().unwrap().len(), 5);
}

#[test]
fn malformed_inputs_exit_with_two() {
    let dir = TempDir::new().unwrap();
    let cases = [
        ("zero.json", r#"{"ambient_dim": 2, "kind": "deformed_braid", "offsets": {"1,2": ["1/0"]}}"#, "malformed_input"),
        ("key.json", r#"{"ambient_dim": 2, "kind": "deformed_braid", "offsets": {"1-2": ["1"]}}"#, "malformed_input"),
        ("syntax.json", "{", "malformed_input"),
        (
            "order.json",
            r#"{"ambient_dim": 2, "kind": "deformed_braid", "offsets": {"1,2": ["1", "0"]}}"#,
            "invalid_arrangement",
        ),
        ("missing.json", r#"{"ambient_dim": 3, "kind": "deformed_braid", "offsets": {"1,2": ["1"]}}"#, "invalid_arrangement"),
    ];
    for (name, text, kind) in cases {
        let path = write(dir.path(), name, text);
        let out = arrcomb(&["faces", s(&path)]);
        assert_eq!(out.status.code(), Some(2), "{name}");
        let err = stderr_json(&out);
        assert_eq!(err["error"], kind, "{name}: {err}");
        assert!(err["message"].is_string());
        assert!(out.stdout.is_empty());
    }
    let out = arrcomb(&["faces", s(&dir.path().join("absent.json"))]);
    assert_eq!(stderr_json(&out)["error"], "io");
}

#[test]
fn error_messages_number_pairs_from_one() {
    let dir = TempDir::new().unwrap();
    let path = write(dir.path(), "order.json", r#"{"ambient_dim": 2, "kind": "deformed_braid", "offsets": {"1,2": ["1", "0"]}}"#);
    let err = stderr_json(&arrcomb(&["faces", s(&path)]));
    assert!(err["message"].as_str().unwrap().contains("(1, 2)"), "{err}");
}

#[test]
fn usage_errors_are_json() {
    let out = arrcomb(&["poly", "file.json"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "usage");
    let out = arrcomb(&["verify", "--family", "shi", "--trunc", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn faces_output_is_deterministic_and_written_to_file() {
    let dir = TempDir::new().unwrap();
    let catalan = gen(dir.path(), "catalan", 3, 1);
    let target = dir.path().join("faces.json");
    let first = arrcomb(&["faces", s(&catalan), "--out", s(&target)]);
    assert!(first.status.success() && first.stdout.is_empty());
    let second = arrcomb(&["faces", s(&catalan)]);
    assert_eq!(fs::read(&target).unwrap(), second.stdout);
    let faces = stdout_json(&second);
    let faces = faces.as_array().unwrap();
    let regions = faces.iter().filter(|f| f["dim"] == 3).count();
    assert_eq!(regions, 30);
    for (k, f) in faces.iter().enumerate() {
        assert_eq!(f["id"], k + 1);
        assert_eq!(f["sign"].as_str().unwrap().len(), 9);
    }
}

#[test]
fn cache_is_used_and_agrees_with_fresh_runs() {
    let dir = TempDir::new().unwrap();
    let cache = dir.path().join("cache");
    let shi = gen(dir.path(), "shi", 3, 1);
    let fresh = arrcomb(&["faces", s(&shi)]);
    let cold = arrcomb(&["--cache-dir", s(&cache), "faces", s(&shi)]);
    let entries = fs::read_dir(&cache).unwrap().count();
    assert!(entries >= 1);
    let warm = arrcomb(&["--cache-dir", s(&cache), "faces", s(&shi)]);
    assert_eq!(fresh.stdout, cold.stdout);
    assert_eq!(fresh.stdout, warm.stdout);
    let table = arrcomb(&["--cache-dir", s(&cache), "table", s(&shi)]);
    assert!(table.status.success());
    assert!(fs::read_dir(&cache).unwrap().count() > entries);

    let env_cache = dir.path().join("env");
    let out = arrcomb_with(&["--cache-dir", s(&cache), "faces", s(&shi)], |c| {
        c.env("ARRCOMB_CACHE_DIR", &env_cache);
    });
    assert_eq!(out.stdout, fresh.stdout);
    assert_eq!(fs::read_dir(&env_cache).unwrap().count(), 1);
}

#[test]
fn corrupt_cache_entries_are_recomputed() {
    let dir = TempDir::new().unwrap();
    let cache = dir.path().join("cache");
    let shi = gen(dir.path(), "shi", 2, 1);
    let fresh = arrcomb(&["faces", s(&shi)]);
    arrcomb(&["--cache-dir", s(&cache), "faces", s(&shi)]);
    for entry in fs::read_dir(&cache).unwrap() {
        fs::write(entry.unwrap().path(), "[{\"id\": 1}]").unwrap();
    }
    let again = arrcomb(&["--cache-dir", s(&cache), "faces", s(&shi)]);
    assert_eq!(again.stdout, fresh.stdout);
}

#[test]
fn bijection_forward_and_inverse() {
    let dir = TempDir::new().unwrap();
    let shi = gen(dir.path(), "shi", 3, 1);
    let faces = stdout_json(&arrcomb(&["faces", s(&shi)]));
    for face in faces.as_array().unwrap() {
        let id = face["id"].as_u64().unwrap().to_string();
        let image = stdout_json(&arrcomb(&["bijection", s(&shi), "--face", &id]));
        let blocks = image["partition"].as_array().unwrap();
        assert_eq!(blocks.len() as u64, face["level"].as_u64().unwrap());
        let dims: u64 = image["parts"].as_array().unwrap().iter().map(|p| p["dim"].as_u64().unwrap()).sum();
        assert_eq!(dims, face["dim"].as_u64().unwrap());
        let inline = image.to_string();
        let back = stdout_json(&arrcomb(&["bijection", s(&shi), "--inverse", &inline]));
        assert_eq!(&back, face);
    }
    let file = write(dir.path(), "phi.json", r#"{"partition": [[3], [1, 2]], "parts": [{"sign": ""}, {"sign": "+-"}]}"#);
    let face = stdout_json(&arrcomb(&["bijection", s(&shi), "--inverse", s(&file)]));
    assert_eq!(face["level"], 2);
    assert_eq!(face["dim"], 3);
}

#[test]
fn bijection_rejects_bad_requests() {
    let dir = TempDir::new().unwrap();
    let shi = gen(dir.path(), "shi", 2, 1);
    let out = arrcomb(&["bijection", s(&shi), "--face", "99"]);
    assert_eq!(stderr_json(&out)["error"], "malformed_input");
    let out = arrcomb(&["bijection", s(&shi), "--inverse", r#"{"partition": [[1], [1]], "parts": [{"sign": ""}, {"sign": ""}]}"#]);
    assert_eq!(out.status.code(), Some(2));
    // the region "+-" of the induced Shi arrangement on {1, 2} has level 1;
    // "--" has level 2 and cannot be a part
    let out = arrcomb(&["bijection", s(&shi), "--inverse", r#"{"partition": [[1, 2]], "parts": [{"sign": "--"}]}"#]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(stderr_json(&out)["error"], "invalid_arrangement");
}
