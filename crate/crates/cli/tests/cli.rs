use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use protoalg::fixtures;
use protoalg::format::{parse_definition, serialize_definition};
use protoalg::model::{Atom, ProtoAlgorithm};
use serde_json::Value;
use tempfile::TempDir;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures").join(format!("{name}.pad"))
}

fn protoalg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_protoalg")).args(args).output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn put(dir: &TempDir, name: &str, pa: &ProtoAlgorithm) -> String {
    let p = dir.path().join(name);
    std::fs::write(&p, serialize_definition(pa)).unwrap();
    p.display().to_string()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn validate_exit_codes() {
    let o = protoalg(&["validate", s(&golden("parity"))]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["verdict"], "valid");

    let dir = TempDir::new().unwrap();
    let mut pa = fixtures::parity();
    pa.interpretation.domain.push(Atom::Int(9));
    if let Some(t) = pa.interpretation.functions.get_mut("fin") {
        t.insert(Atom::Int(9), Atom::str("odd"));
    }
    let o = protoalg(&["validate", &put(&dir, "unreachable.pad", &pa)]);
    assert_eq!(code(&o), 1);
    let v = stdout_json(&o);
    assert_eq!(v["verdict"], "invalid");
    assert_eq!(v["violations"][0]["rule"], "interpretation.minimality");

    assert_eq!(code(&protoalg(&["validate", "/nonexistent/model.pad"])), 2);
}

#[test]
fn malformed_document_is_a_parse_error() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("broken.pad");
    std::fs::write(&p, "{\"kind\": \"interactive\",,}").unwrap();
    let o = protoalg(&["validate", s(&p)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
}

#[test]
fn run_listings() {
    let o = protoalg(&["run", s(&golden("parity")), "--input", "3"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["runs"].as_array().unwrap().len(), 1);
    assert_eq!(v["runs"][0]["outputs"], serde_json::json!(["odd"]));

    let v = stdout_json(&protoalg(&["run", s(&golden("choice")), "--input", "2"]));
    assert_eq!(v["runs"].as_array().unwrap().len(), 2);

    let o = protoalg(&["run", s(&golden("echo")), "--input", "1", "0"]);
    assert_eq!(code(&o), 0);
    let v = stdout_json(&o);
    assert_eq!(v["runs"].as_array().unwrap().len(), 1);
    assert_eq!(v["runs"][0]["status"], "complete");

    let v = stdout_json(&protoalg(&["run", s(&golden("parity")), "--input", "3", "--mode", "computational"]));
    assert_eq!(v["mode"], "computational");

    assert_eq!(code(&protoalg(&["run", s(&golden("parity")), "--input", "7"])), 2);
    assert_eq!(code(&protoalg(&["run", s(&golden("parity"))])), 2);
}

#[test]
fn relation_listings() {
    let v = stdout_json(&protoalg(&["relation", s(&golden("parity"))]));
    assert_eq!(v["count"], 4);
    let v = stdout_json(&protoalg(&["relation", s(&golden("choice"))]));
    let pairs = v["pairs"].as_array().unwrap();
    assert!(pairs.contains(&serde_json::json!([2, 3])));
    assert!(pairs.contains(&serde_json::json!([2, 4])));
    let v = stdout_json(&protoalg(&["relation", s(&golden("echo")), "--max-stream-len", "3"]));
    assert_eq!(v["count"], 7);
}

#[test]
fn checks_and_witnesses() {
    let dir = TempDir::new().unwrap();
    let renamed = put(&dir, "renamed.pad", &fixtures::parity_renamed());
    let pred = put(&dir, "pred.pad", &fixtures::parity_pred());
    let parity = golden("parity");
    let witness = dir.path().join("iso.paw");

    let o = protoalg(&["check", "--kind", "iso", s(&parity), &renamed, "--emit-witness", s(&witness)]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout_json(&o)["witness"]["type"], "isomorphism");
    assert_eq!(code(&protoalg(&["verify-witness", s(&parity), &renamed, s(&witness)])), 0);
    // The same witness does not relate PARITY to PARITY-PRED.
    assert_eq!(code(&protoalg(&["verify-witness", s(&parity), &pred, s(&witness)])), 1);

    assert_eq!(code(&protoalg(&["check", "--kind", "aeqv", s(&parity), &pred])), 1);
    let w = dir.path().join("ceqv.paw");
    assert_eq!(code(&protoalg(&["check", "--kind", "ceqv", s(&parity), &pred, "--emit-witness", s(&w)])), 0);
    assert_eq!(code(&protoalg(&["verify-witness", s(&parity), &pred, s(&w)])), 0);

    for kind in ["asim", "csim"] {
        let w = dir.path().join(format!("{kind}.paw"));
        let o = protoalg(&["check", "--kind", kind, s(&golden("echo")), s(&golden("echo")), "--emit-witness", s(&w)]);
        assert_eq!(code(&o), 0);
        assert_eq!(code(&protoalg(&["verify-witness", s(&golden("echo")), s(&golden("echo")), s(&w)])), 0);
    }

    let o = protoalg(&["check", "--kind", "aeqv", s(&parity), s(&golden("echo"))]);
    assert_eq!(code(&o), 1);
    assert!(stdout_json(&o)["note"].as_str().unwrap().contains("kinds differ"));
    assert_eq!(code(&protoalg(&["check", "--kind", "bisim", s(&parity), s(&parity)])), 2);
}

#[test]
fn embedding() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("parity-i.pad");
    let o = protoalg(&["embed", s(&golden("parity")), "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout_json(&o)["embedding"]["relation_agreement"], true);
    let ia = parse_definition(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(ia.is_interactive());
    assert_eq!(code(&protoalg(&["validate", s(&out)])), 0);

    assert_eq!(code(&protoalg(&["embed", s(&golden("echo")), "--out", s(&out)])), 2);

    // An `in` table missing a row breaks totality.
    let in_table = dir.path().join("in.json");
    let out_table = dir.path().join("out.json");
    std::fs::write(&in_table, r#"{"0": {"0": 0, "1": 0, "2": 0, "3": 0}}"#).unwrap();
    std::fs::write(&out_table, r#"{"0": "even", "1": "odd", "2": "even", "3": "odd"}"#).unwrap();
    let o = protoalg(&[
        "embed",
        s(&golden("parity")),
        "--out",
        s(&dir.path().join("partial.pad")),
        "--in-table",
        s(&in_table),
        "--out-table",
        s(&out_table),
    ]);
    assert_eq!(code(&o), 1);

    let full: String = (0..4).map(|d| format!("\"{d}\": {{\"0\": {d}, \"1\": {d}, \"2\": {d}, \"3\": {d}}}")).collect::<Vec<_>>().join(", ");
    std::fs::write(&in_table, format!("{{{full}}}")).unwrap();
    let o = protoalg(&[
        "embed",
        s(&golden("parity")),
        "--out",
        s(&dir.path().join("full.pad")),
        "--in-table",
        s(&in_table),
        "--out-table",
        s(&out_table),
    ]);
    assert_eq!(code(&o), 0);
}

#[test]
fn output_is_byte_stable() {
    let a = protoalg(&["relation", s(&golden("choice"))]);
    let b = protoalg(&["relation", s(&golden("choice"))]);
    assert_eq!(a.stdout, b.stdout);
    let a = protoalg(&["check", "--kind", "ceqv", s(&golden("echo")), s(&golden("echo"))]);
    let b = protoalg(&["check", "--kind", "ceqv", s(&golden("echo")), s(&golden("echo"))]);
    assert_eq!(a.stdout, b.stdout);
}
