use std::path::PathBuf;
use std::process::{Command, Output};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn duval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_duval"))
        .args(args)
        .current_dir(root())
        .output()
        .expect("run duval")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let p = std::env::temp_dir().join(format!("duval-cli-{}-{name}", std::process::id()));
    std::fs::write(&p, body).unwrap();
    p
}

#[test]
fn enumerate_counts() {
    for (d, kind, n) in [("3", "lines", 27), ("2", "roots", 126), ("8", "lines", 0), ("1", "lines", 240)] {
        let o = duval(&["enumerate", d, kind]);
        assert!(o.status.success());
        let out = stdout(&o);
        let mut lines = out.lines();
        assert_eq!(lines.next().unwrap(), format!("# {n} {kind} on degree {d}"));
        assert_eq!(lines.count(), n);
    }
}

#[test]
fn enumerate_json() {
    let o = duval(&["--json", "enumerate", "4", "lines"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["count"], 16);
    assert_eq!(v["classes"].as_array().unwrap().len(), 16);
}

#[test]
fn enumerate_bad_degree_is_input_error() {
    assert_eq!(duval(&["enumerate", "10", "roots"]).status.code(), Some(2));
}

#[test]
fn decide_examples_in_order() {
    let o = duval(&["--json", "decide", "fixtures/eg1.json", "fixtures/eg2.json", "fixtures/eg3-minus.json"]);
    assert!(o.status.success());
    let vs: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(vs.len(), 3);
    assert_eq!(vs[0]["answer"], "NoCylinder");
    assert_eq!(vs[1]["answer"], "NoCylinder");
    assert_eq!(vs[2]["answer"], "ContainsCylinder");
    for v in &vs {
        assert!(v["rule"].is_string());
        assert!(!v["trace"].as_array().unwrap().is_empty());
    }
}

#[test]
fn decide_fibration_examples() {
    let o = duval(&["decide-fibration", "fixtures/eg2.json", "fixtures/eg1.json"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let heads: Vec<&str> = out.lines().filter(|l| l.starts_with("fixtures/")).collect();
    assert!(heads[0].contains("contains a cylinder"), "{out}");
    assert!(heads[1].contains("no cylinder"), "{out}");
}

#[test]
fn malformed_root_reports_field_path() {
    let p = scratch("bad.json", r#"{"degree":3,"roots":[[0,1,-1]],"galois":{"matrices":[]},"point_flags":{}}"#);
    let o = duval(&["decide", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("roots[0]"), "{err}");
}

#[test]
fn unreadable_json_is_input_error() {
    let p = scratch("junk.json", "{ not json");
    assert_eq!(duval(&["classify", p.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_scopes() {
    assert_eq!(duval(&["verify", "no-such-scope"]).status.code(), Some(2));
    let o = duval(&["verify", "pencil"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = duval(&["--json", "verify", "Corti", "--denominator-bound", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
}

#[test]
fn classify_renders_graphs() {
    let o = duval(&["classify", "fixtures/eg1.json"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains('○') || out.contains('●'), "{out}");
    assert!(out.contains("rank one: yes"), "{out}");
    let o = duval(&["--json", "classify", "fixtures/eg1.json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degree"], 3);
    assert_eq!(v["rho"], 1);
}
