use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qforge"))
        .args(args)
        .env_remove("QFORGE_CAPS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    assert!(o.status.success() || o.status.code() == Some(1), "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(o)).unwrap()
}

fn write(dir: &Path, name: &str, contents: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_str().unwrap().to_string()
}

fn make(dir: &Path, name: &str, args: &[&str]) -> String {
    let mut full = vec!["--format", "json", "make"];
    full.extend_from_slice(args);
    let o = qforge(&full);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    write(dir, name, &stdout(&o))
}

#[test]
fn check_reports_properties() {
    let dir = tempfile::tempdir().unwrap();
    let z43 = make(dir.path(), "z43.json", &["alexander", "4", "3"]);
    let v = json(&qforge(&["check", &z43, "--format", "json"]));
    assert_eq!(v["valid"], true);
    assert_eq!(v["medial"], true);
    assert_eq!(v["reductivity"], 2);
    assert_eq!(v["orbits"], serde_json::json!([[0, 2], [1, 3]]));
    assert_eq!(v["subdirectly_irreducible"], false);
}

#[test]
fn check_rejects_invalid_tables() {
    let dir = tempfile::tempdir().unwrap();
    // not idempotent
    let bad = write(dir.path(), "bad.csv", "1,0\n1,0\n");
    let o = qforge(&["check", &bad, "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(json(&o)["valid"], false);
    let o = qforge(&["classify", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error:"));
}

#[test]
fn csv_and_json_inputs_agree() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write(dir.path(), "p2.csv", "# projection\n0 1\n0 1\n");
    let js = make(dir.path(), "p2.json", &["projection", "2"]);
    assert_eq!(qforge(&["iso", &csv, &js]).status.code(), Some(0));
}

#[test]
fn si_and_iso_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let z43 = make(dir.path(), "z43.json", &["alexander", "4", "-1"]);
    let p2 = make(dir.path(), "p2.json", &["projection", "2"]);
    let p4 = make(dir.path(), "p4.json", &["projection", "4"]);
    assert_eq!(qforge(&["congr", "si", &z43]).status.code(), Some(1));
    assert_eq!(qforge(&["congr", "si", &p2]).status.code(), Some(0));
    assert_eq!(qforge(&["iso", &z43, &p4]).status.code(), Some(1));

    let mesh = qforge(&["--format", "json", "mesh", "canonical", &z43]);
    let mesh = write(dir.path(), "m.json", &stdout(&mesh));
    let sum = qforge(&["--format", "json", "mesh", "sum", &mesh]);
    let sum = write(dir.path(), "sum.json", &stdout(&sum));
    let o = qforge(&["--format", "json", "iso", &z43, &sum, "--witness"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["witness"].as_array().unwrap().len(), 4);
}

#[test]
fn mesh_commands() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(
        dir.path(),
        "good.json",
        r#"{"groups":[{"orders":[2]},{"orders":[2]}],"phi":[[0,0],[0,0]],"c":[[[0],[1]],[[1],[0]]]}"#,
    );
    // c_{1,1} must vanish
    let bad = write(
        dir.path(),
        "bad.json",
        r#"{"groups":[{"orders":[2]},{"orders":[2]}],"phi":[[0,0],[0,0]],"c":[[[0],[1]],[[1],[1]]]}"#,
    );
    let o = qforge(&["mesh", "validate", &good]);
    assert_eq!(o.status.code(), Some(0));
    let o = qforge(&["--format", "json", "mesh", "validate", &bad]);
    assert_eq!(o.status.code(), Some(1));
    assert!(json(&o)["error"].as_str().unwrap().contains("M2"));

    let z43 = make(dir.path(), "z43.json", &["alexander", "4", "3"]);
    let canon = qforge(&["--format", "json", "mesh", "canonical", &z43]);
    let canon = write(dir.path(), "canon.json", &stdout(&canon));
    assert_eq!(qforge(&["iso-mesh", &good, &canon]).status.code(), Some(0));
    let single = qforge(&["--format", "json", "make", "siq", "--cyclic", "4,3", "--c", "1", "--mesh"]);
    let single = write(dir.path(), "siq.json", &stdout(&single));
    assert_eq!(qforge(&["iso-mesh", &good, &single]).status.code(), Some(1));
}

#[test]
fn congruence_listing_and_caps() {
    let dir = tempfile::tempdir().unwrap();
    let p3 = make(dir.path(), "p3.json", &["projection", "3"]);
    let v = json(&qforge(&["--format", "json", "congr", "list", &p3]));
    assert_eq!(v.as_array().unwrap().len(), 5);
    let o = qforge(&["--cap-lattice", "2", "congr", "list", &p3]);
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_qforge"))
        .args(["congr", "list", &p3])
        .env("QFORGE_CAPS", "lattice=2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
    let six = make(dir.path(), "six.json", &["siq", "--cyclic", "4,3", "--c", "1"]);
    let v = json(&qforge(&["--format", "json", "congr", "monolith", &six]));
    assert_eq!(v, serde_json::json!([[0, 2], [1, 3], [4], [5]]));
}

#[test]
fn siq_from_spec_file() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(
        dir.path(),
        "spec.json",
        r#"{"module":{"group":{"orders":[2,2]},"t":[[1,0],[1,1]]},"c":[[1,0]]}"#,
    );
    let q = qforge(&["--format", "json", "make", "siq", &spec]);
    let q = write(dir.path(), "q.json", &stdout(&q));
    let v = json(&qforge(&["--format", "json", "classify", &q]));
    assert_eq!(v["class"], "reductive");
    assert_eq!(v["reductivity"], 3);
    let bad = write(dir.path(), "bad.json", r#"{"module":{"group":{"orders":[4]},"t":[[3]]},"c":[[1],[3]]}"#);
    assert_eq!(qforge(&["make", "siq", &bad]).status.code(), Some(2));
}

#[test]
fn enumerate_is_deterministic_and_stamped() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    for _ in 0..2 {
        let o = qforge(&["--seed", "7", "--jobs", "2", "enumerate", "--order", "5", "--out", out]);
        assert!(o.status.success());
    }
    let first = std::fs::read_to_string(dir.path().join("enumerate-5.json")).unwrap();
    let again = qforge(&["--seed", "7", "--jobs", "1", "--format", "json", "enumerate", "--order", "5"]);
    let v: Value = serde_json::from_str(&first).unwrap();
    assert_eq!(v["seed"], 7);
    assert_eq!(v["version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(v["config_hash"].as_str().unwrap().len(), 64);
    let reps = v["representatives"].as_array().unwrap();
    assert!(reps.iter().all(|r| r["quandle"]["size"] == 5));
    let v2: Value = serde_json::from_str(&stdout(&again)).unwrap();
    assert_eq!(v["representatives"], v2["representatives"]);
}

#[test]
fn gallery_export_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let o = qforge(&["gallery", "export", dir.path().to_str().unwrap()]);
    assert!(o.status.success());
    let index: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("index.json")).unwrap()).unwrap();
    let entries = index["entries"].as_array().unwrap();
    assert!(!entries.is_empty());
    for e in entries {
        let files: Vec<&str> = e["files"].as_array().unwrap().iter().map(|f| f.as_str().unwrap()).collect();
        let table = dir.path().join(files[0]);
        let table = table.to_str().unwrap();
        assert_eq!(qforge(&["check", table]).status.code(), Some(0));
        if let Some(mesh) = files.iter().find(|f| f.ends_with(".mesh.json")) {
            let mesh = dir.path().join(mesh);
            let sum = qforge(&["--format", "json", "mesh", "sum", mesh.to_str().unwrap()]);
            let sum = write(dir.path(), "sum.json", &stdout(&sum));
            assert_eq!(qforge(&["iso", table, &sum]).status.code(), Some(0), "{}", e["name"]);
        }
    }
}
