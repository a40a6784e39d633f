use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn superk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superk"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("binary runs")
}

fn stdout_json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn golden(name: &str) -> String {
    fs::read_to_string(fixtures().join("golden").join(name)).unwrap()
}

#[test]
fn goldens_are_reproduced_byte_for_byte() {
    let cases: [(&[&str], &str, i32); 3] = [
        (&["star", "certify", "--complex", "triangle.json"], "triangle_cover.cert.json", 0),
        (&["knet", "synthesize", "--system", "two_level.json"], "two_level.cert.json", 0),
        (&["knet", "verify", "--family", "helly_triple.json"], "helly_triple.cert.json", 2),
    ];
    for (args, file, code) in cases {
        let o = superk(args);
        assert_eq!(o.status.code(), Some(code), "{args:?}");
        assert_eq!(String::from_utf8(o.stdout).unwrap(), golden(file), "{args:?}");
    }
}

#[test]
fn goldens_verify() {
    for f in ["triangle_cover.cert.json", "two_level.cert.json", "helly_triple.cert.json"] {
        let path = fixtures().join("golden").join(f);
        let o = superk(&["verify", "--certificate", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{f}");
        assert_eq!(stdout_json(&o)["verified"], Value::Bool(true));
    }
}

#[test]
fn helly_triple_reports_the_violation() {
    let o = superk(&["knet", "verify", "--family", "helly_triple.json"]);
    assert_eq!(o.status.code(), Some(2));
    let v = stdout_json(&o);
    assert_eq!(v["payload"]["report"]["violations"], serde_json::json!([["A", "B", "C"]]));
}

#[test]
fn tampered_certificate_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let mut v: Value = serde_json::from_str(&golden("triangle_cover.cert.json")).unwrap();
    v["payload"]["groups"][0]["min_distance"] = Value::from("1/2");
    let path = dir.path().join("c.json");
    fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let o = superk(&["verify", "--certificate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout_json(&o)["verified"], Value::Bool(false));

    v["inputs"]["complex"]["vertices"][0] = Value::from("z");
    fs::write(&path, serde_json::to_string(&v).unwrap()).unwrap();
    let o = superk(&["verify", "--certificate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout_json(&o)["error"].as_str().unwrap().contains("digest"));
}

#[test]
fn malformed_json_reports_position() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    fs::write(&path, "{\"vertices\": [\"a\",\n  \"b\"\n  \"maximal_simplices\": []}").unwrap();
    let o = superk(&["star", "cover", "--complex", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.json:3:3"), "{err}");
}

#[test]
fn non_canonical_rational_is_malformed() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("p.json");
    fs::write(&path, r#"{"coords": {"a": "4/6", "b": "1/3"}}"#).unwrap();
    let o = superk(&["star", "member", "--complex", "edge_ab.json", "--point", path.to_str().unwrap(), "--simplex", "a"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    let o = superk(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(64));
    assert!(String::from_utf8(o.stderr).unwrap().contains("Usage"));
}

#[test]
fn star_member_matches_the_closed_form() {
    let o = superk(&["star", "member", "--complex", "edge_ab.json", "--point", "point_a_heavy.json", "--simplex", "a"]);
    assert_eq!(stdout_json(&o)["member"], Value::Bool(false));
    let o = superk(&["star", "member", "--complex", "edge_ab.json", "--point", "point_a_heavy.json", "--simplex", "a,b"]);
    assert_eq!(stdout_json(&o)["member"], Value::Bool(true));
}

#[test]
fn star_cover_of_triangle() {
    let v = stdout_json(&superk(&["star", "cover", "--complex", "triangle.json"]));
    assert_eq!(v["stars"], 7);
    let sizes: Vec<usize> = v["groups"].as_array().unwrap().iter().map(|g| g["bases"].as_array().unwrap().len()).collect();
    assert_eq!(sizes, vec![3, 3, 1]);
}

#[test]
fn sweep_onto_edge_keeps_tracked_vertex() {
    let o = superk(&["sweep", "run", "--complex", "triangle.json", "--subcomplex", "edge_ab.json", "--points", "sweep_points.json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = stdout_json(&o);
    assert_eq!(v["payload"]["reduced"]["maximal_simplices"], serde_json::json!([["a", "b"], ["c"]]));
    let o = superk(&["sweep", "run", "--complex", "triangle.json", "--subcomplex", "edge_ab.json"]);
    let v = stdout_json(&o);
    assert_eq!(v["payload"]["reduced"]["maximal_simplices"], serde_json::json!([["a", "b"]]));
}

#[test]
fn product_diagnostics() {
    let o = superk(&["product", "build", "--spec", "product_2x2.json"]);
    assert_eq!(o.status.code(), Some(0));
    let o = superk(&["product", "build", "--spec", "product_nonbinary.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout_json(&o)["error"].as_str().unwrap().contains("not binary"));
    let o = superk(&["product", "build", "--spec", "product_hole.json"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout_json(&o)["error"].as_str().unwrap().contains("x0=0, x1=1"));
}

#[test]
fn every_emitting_command_round_trips_through_verify() {
    let runs: [&[&str]; 8] = [
        &["star", "witness", "--complex", "triangle.json", "--members", "star_members.json"],
        &["sweep", "run", "--complex", "triangle.json", "--subcomplex", "edge_ab.json", "--points", "sweep_points.json"],
        &["realize", "--system", "two_level.json"],
        &["knet", "refine", "--system", "two_level.json", "--set", "key_set.json"],
        &["go", "witness", "--sets", "convex_sets.json"],
        &["go", "family", "--ground", "ground6.json"],
        &["product", "build", "--spec", "product_2x2.json"],
        &["star", "certify", "--complex", "edge_ab.json"],
    ];
    let dir = tempfile::tempdir().unwrap();
    for args in runs {
        let o = superk(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let path = dir.path().join("c.json");
        fs::write(&path, &o.stdout).unwrap();
        let v = superk(&["verify", "--certificate", path.to_str().unwrap()]);
        assert_eq!(v.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&v.stdout));
        // identical inputs give identical bytes
        assert_eq!(superk(args).stdout, o.stdout, "{args:?}");
    }
}

#[test]
fn unlinked_witness_request_is_a_contract_violation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.json");
    fs::write(&path, r#"[{"star": ["a"]}, {"star": ["b"]}]"#).unwrap();
    let o = superk(&["star", "witness", "--complex", "edge_ab.json", "--members", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}
