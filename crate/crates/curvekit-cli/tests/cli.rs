use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn curvekit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curvekit")).args(args).env("CURVEKIT_THREADS", "1").output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn schema(name: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(name);
    let s: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&s).unwrap()
}

fn assert_valid(v: &jsonschema::Validator, doc: &Value) {
    let errs: Vec<String> = v.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path())).collect();
    assert!(errs.is_empty(), "{errs:#?}");
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(curvekit(&["verify", "nosuch"]).status.code(), Some(64));
    assert_eq!(curvekit(&["export", "octagon", "--format", "svg"]).status.code(), Some(64));
    assert_eq!(curvekit(&[]).status.code(), Some(64));
    let out = Command::new(env!("CARGO_BIN_EXE_curvekit"))
        .args(["export", "octagon"])
        .env("CURVEKIT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn export_rigid_set_dot() {
    let out = curvekit(&["export", "rigid-set", "--b", "7", "--format", "dot"]);
    assert!(out.status.success());
    let dot = String::from_utf8(out.stdout).unwrap();
    assert!(dot.trim_start().starts_with("graph"), "{dot}");
    let nodes = dot.lines().filter(|l| l.contains("label=") && !l.contains("--")).count();
    assert_eq!(nodes, 14);
}

#[test]
fn export_json_matches_schema() {
    let v = schema("graph.schema.json");
    let oct = stdout_json(&curvekit(&["export", "octagon"]));
    assert_valid(&v, &oct);
    assert_eq!(oct["nodes"].as_array().unwrap().len(), 8);
    assert_eq!(oct["edges"].as_array().unwrap().len(), 12);
    for object in ["rigid-set", "farey-ball", "heptagon"] {
        assert_valid(&v, &stdout_json(&curvekit(&["export", object])));
    }
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("g/x6.json");
    let o = curvekit(&["export", "rigid-set", "--b", "6", "--out", out.to_str().unwrap()]);
    assert!(o.status.success() && o.stdout.is_empty());
    assert_eq!(read_json(&out)["nodes"].as_array().unwrap().len(), 9);
}

#[test]
fn curve_tool() {
    let i = stdout_json(&curvekit(&["curve", "intersect", r#"{"b":7,"block":[1,2,3]}"#, r#"{"b":7,"block":[2,3,4]}"#]));
    assert_eq!(i["intersection"], 2);
    let c = stdout_json(&curvekit(&["curve", "classify", r#"{"b":7,"block":[1,2]}"#]));
    assert_eq!(c["class"], "minimal");
    let c = stdout_json(&curvekit(&["curve", "classify", r#"{"b":8,"block":[1,2,3,4]}"#]));
    assert_eq!(c["class"], "strongly-separating");

    let dir = tempfile::tempdir().unwrap();
    let key = stdout_json(&curvekit(&["curve", "apply-word", "[]", r#"{"b":7,"block":[2,3,4]}"#]));
    assert_valid(&schema("curve.schema.json"), &key);
    let file = dir.path().join("key.json");
    std::fs::write(&file, key.to_string()).unwrap();
    let at = format!("@{}", file.display());
    assert_eq!(stdout_json(&curvekit(&["curve", "apply-word", "[]", &at])), key);
    let s = stdout_json(&curvekit(&["curve", "separation", &at]));
    assert_eq!(s["sides"][0].as_array().unwrap().len() + s["sides"][1].as_array().unwrap().len(), 7);

    let moved = stdout_json(&curvekit(&["curve", "apply-word", r#"[["H",1,1],["H",4,-1]]"#, &at]));
    assert_valid(&schema("curve.schema.json"), &moved);
    let back = stdout_json(&curvekit(&["curve", "apply-word", "[4, -1]", &moved.to_string()]));
    assert_eq!(back, key);
}

#[test]
fn curve_tool_errors() {
    let out = curvekit(&["curve", "classify", "{\"b\": 7,\n \"block\": [1, 2,]}"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2, column"), "{err}");
    assert_eq!(curvekit(&["curve", "classify", "@/nonexistent/curve.json"]).status.code(), Some(1));
}

fn verify(dir: &Path, extra: &[&str]) -> (Output, PathBuf) {
    let report = dir.join("out/report.json");
    let mut args = vec!["verify", "farey", "--report", report.to_str().unwrap()];
    args.extend_from_slice(extra);
    (curvekit(&args), report)
}

#[test]
fn verify_writes_valid_report() {
    let dir = tempfile::tempdir().unwrap();
    let (out, report) = verify(dir.path(), &["--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("farey: 4 pass, 0 fail, 0 unresolved"));
    let r = read_json(&report);
    assert_valid(&schema("report.schema.json"), &r);
    assert_eq!(r["config"]["seed"], 3);
    assert_eq!(r["totals"]["pass"], 4);

    let v = schema("report.schema.json");
    let mut bad = r.clone();
    bad["checks"][0]["status"] = "ok".into();
    assert!(!v.is_valid(&bad));
    let mut bad = r;
    bad["checks"][0]["status"] = "fail".into();
    assert!(!v.is_valid(&bad), "a failing check needs a reproducer");
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("knobs.toml");
    std::fs::write(&cfg, "seed = 9\nmax_den = 20\nn_w = 4\n").unwrap();
    let (out, report) = verify(dir.path(), &["--config", cfg.to_str().unwrap(), "--n-w", "6"]);
    assert!(out.status.success());
    let c = &read_json(&report)["config"];
    assert_eq!((c["seed"].as_u64(), c["max_den"].as_i64(), c["n_w"].as_u64()), (Some(9), Some(20), Some(6)));

    std::fs::write(&cfg, "seeed = 9\n").unwrap();
    let (out, _) = verify(dir.path(), &["--config", cfg.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("seeed"));
}

#[test]
fn census_certificate_matches_schema() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("sup.json");
    let out = curvekit(&["verify", "supports", "--b", "8", "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r = read_json(&report);
    assert_valid(&schema("report.schema.json"), &r);
    let nu = r["checks"].as_array().unwrap().iter().find(|c| c["id"] == "supports.nu").unwrap();
    let cert = read_json(&dir.path().join("sup.certs").join(nu["witness"].as_str().unwrap()));
    let v = schema("census.schema.json");
    let list = cert.as_array().unwrap();
    assert_eq!(list.len(), 2);
    for c in list {
        assert_valid(&v, c);
    }
}
