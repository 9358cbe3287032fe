use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn covercalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_covercalc"))
        .args(args)
        .env_remove("COVERCALC_MAX_BALL")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = covercalc(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "covercalc/1");
    v["result"].clone()
}

#[test]
fn classify_cover_of_holed_torus() {
    let r = json(&["classify-cover", "--surface", "g=1 b=1 p=0", "--hom", "mod-n 2"]);
    assert_eq!(r["degree"], 4);
    assert_eq!(r["cover"], serde_json::json!({"g": 1, "b": 4, "p": 0}));
}

#[test]
fn explicit_abelian_hom_matches_mod_n() {
    let a = json(&["classify-cover", "--surface", "g=1 b=1", "--hom", "target=(Z/3)^2 images: a1->(1,0), b1->(0,1)"]);
    let b = json(&["classify-cover", "--surface", "g=1 b=1", "--mod-n", "3"]);
    assert_eq!(a["cover"], b["cover"]);
    assert_eq!(a["degree"], 9);
}

#[test]
fn missing_image_is_input_error() {
    let out = covercalc(&["classify-cover", "--surface", "g=1 b=1", "--hom", "target=Z/2 images: a1->(1)"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("rank mismatch"));
}

#[test]
fn closed_surface_relator_checked() {
    let out = covercalc(&["classify-cover", "--surface", "g=0 p=2", "--hom", "target=Z/2 images: c1->(1), c2->(0)"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn ends_of_z2() {
    let r = json(&["ends", "--group", "Z2", "--radius", "6"]);
    assert_eq!(r["count"], 1);
    assert_eq!(r["stabilized"], true);
    assert_eq!(r["rank"], 0);
}

#[test]
fn resource_bound_exit_code_and_flag_precedence() {
    let out = covercalc(&["ends", "--group", "F2", "--radius", "3", "--max-ball", "50"]);
    assert_eq!(out.status.code(), Some(3));
    let env = Command::new(env!("CARGO_BIN_EXE_covercalc"))
        .args(["ends", "--group", "Z", "--radius", "2"])
        .env("COVERCALC_MAX_BALL", "3")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));
    let flag_wins = Command::new(env!("CARGO_BIN_EXE_covercalc"))
        .args(["ends", "--group", "Z", "--radius", "2", "--max-ball", "1000"])
        .env("COVERCALC_MAX_BALL", "3")
        .output()
        .unwrap();
    assert!(flag_wins.status.success());
}

#[test]
fn chain_certificates() {
    let r = json(&["chain", "--source", "flute", "--target", "g=0 b=0 p=3"]);
    assert_eq!(r["chain"]["steps"].as_array().unwrap().len(), 4);
    assert_eq!(r["all_ok"], true);
    let out = covercalc(&["chain", "--source", "flute", "--target", "torus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn stdin_document() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_covercalc"))
        .args(["uac", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"# once-punctured torus\nsurface g=1 p=1\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["uac"], "flute");
    assert_eq!(v["result"]["consistent"], true);
}

#[test]
fn parse_errors_have_locations() {
    let path = std::env::temp_dir().join("covercalc_bad_input.cc");
    std::fs::write(&path, "group Z\naifn default=0 vals: (a, x)\n").unwrap();
    let out = covercalc(&["ai", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line 2, column 26"), "{err}");
}

#[test]
fn tree_and_dot() {
    let r = json(&["tree", "--factors", "Z/2,Z/3", "--classify", "s t", "--classify", "t s t^-1"]);
    assert_eq!(r["words"][0]["isometry"]["translation_length"], 2);
    assert_eq!(r["words"][1]["isometry"]["type"], "elliptic");
    let dot = covercalc(&["tree", "--factors", "Z/2,Z/3", "--classify", "t", "--output", "dot", "--radius", "2"]);
    let text = String::from_utf8(dot.stdout).unwrap();
    assert!(text.starts_with("graph bass_serre"));
    assert!(text.contains("fillcolor=gold"));
}

#[test]
fn fold_nielsen_schreier() {
    let r = json(&["fold", "--gens", "a, b a b^-1, b^2"]);
    assert_eq!(r["index"], 2);
    assert_eq!(r["rank"], 3);
    assert_eq!(r["nielsen_schreier"], true);
}

#[test]
fn mod_n_of_named_surfaces() {
    assert_eq!(json(&["mod-n", "--surface", "flute", "-n", "2"])["cover"], "spotted_loch_ness");
    assert_eq!(json(&["mod-n", "--surface", "bct", "-n", "2"])["cover"], "loch_ness");
}

#[test]
fn build_dot_and_json() {
    let r = json(&["build", "--surface", "lnm"]);
    assert_eq!(r["classification"]["surface"], "loch_ness");
    let out = covercalc(&["build", "--surface", "lnm", "--output", "dot", "--radius", "1"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("graph"));
    let none = covercalc(&["ends", "--group", "Z", "--output", "dot"]);
    assert_eq!(none.status.code(), Some(2));
}

#[test]
fn deterministic_output() {
    for args in [
        &["chain", "--source", "cantor", "--target", "g=2 b=0 p=0"][..],
        &["ai", "--group", "F2", "--aifn", "default=0 vals: (b,1), (a b,1), (a^-1 b,1), (b b,1)", "--gens", "a"][..],
        &["uac", "--surface", "g=0 p=4", "--ns", "2,3"][..],
    ] {
        let a = covercalc(args);
        let b = covercalc(args);
        assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout);
    }
}
