use std::path::PathBuf;
use std::process::{Command, Output};

fn plhs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_plhs")).args(args).output().expect("binary runs")
}

fn spec(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "specs", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn analyze_catalog_entries() {
    let o = plhs(&["analyze", "subgroup-sphere"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("poisson_lie_subgroup"));
    assert!(text.contains("fails_condition_ii"));

    let o = plhs(&["--json", "analyze", "solvable-plane"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["mu_status"], "multiplicative_unimodular");
    assert_eq!(v["witness_theta0"], serde_json::json!(["0", "0", "1"]));
    for key in ["name", "coisotropic", "subgroup_type", "chi_h0_zero", "invariant_volume", "semi_invariant", "anchors"] {
        assert!(v.get(key).is_some(), "{key}");
    }

    let o = plhs(&["--json", "analyze", "toda-n3"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["coisotropic"], true);
    assert_eq!(v["chi_h0_zero"], false);
    assert_eq!(v["mu_status"], "fails_condition_i");
}

#[test]
fn analyze_spec_files_and_input_errors() {
    assert_eq!(plhs(&["analyze", &spec("solvable-plane.spec")]).status.code(), Some(0));
    assert_eq!(plhs(&["--eta", "2", "analyze", &spec("subgroup-sphere.spec")]).status.code(), Some(0));
    assert_eq!(plhs(&["analyze", "no-such-entry"]).status.code(), Some(2));
    assert_eq!(plhs(&["--eta", "x", "tables"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.spec");
    std::fs::write(&bad, "[algebra]\nlabels = X1 X2 X3\nX1,X2 -> 1 X3\nX2,X1 -> 1 X3\n").unwrap();
    let o = plhs(&["analyze", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
}

#[test]
fn tables_and_golden_files() {
    for eta in ["1", "2"] {
        let o = plhs(&["--eta", eta, "tables"]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(stdout(&o).contains("all 11 cells match"));
    }
    let golden = plhs(&["tables", "--emit-golden"]);
    let text = stdout(&golden);
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, &text).unwrap();
    assert_eq!(plhs(&["tables", "--golden", good.to_str().unwrap()]).status.code(), Some(0));
    let corrupted = dir.path().join("corrupted.json");
    std::fs::write(&corrupted, text.replacen("fails_condition_ii", "fails_condition_i", 1)).unwrap();
    let o = plhs(&["tables", "--golden", corrupted.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("mu_status expected fails_condition_i"));
    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{not json").unwrap();
    assert_eq!(plhs(&["tables", "--golden", garbage.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn dynamics_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("trace.csv");
    let o = plhs(&["dynamics", "compartmental", "--t", "1", "--out", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: volume preserved"));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("t,x1,x2,x3,divint,constraint_drift\n"));
    assert_eq!(text.lines().count(), 1002);
    let o = plhs(&["--json", "dynamics", "toda-n3", "--t", "0.5"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "no preserved volume (certificate)");
    assert!(v["summary"].as_array().unwrap().iter().any(|l| l.as_str().unwrap().contains("-15")));
    assert_eq!(plhs(&["dynamics", "pendulum"]).status.code(), Some(2));
}

#[test]
fn catalog_list() {
    let o = plhs(&["--json", "catalog", "list"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["entries"].as_array().unwrap().len(), 15);
    assert_eq!(v["dynamics"].as_array().unwrap().len(), 4);
}
