use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(self.stdout.trim()).unwrap_or_else(|e| panic!("{e}: {:?}", self.stdout))
    }
}

fn raagkit(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_raagkit")).args(args).env_remove("RAAGKIT_BUDGET").output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

struct Files {
    dir: TempDir,
}

impl Files {
    fn new() -> Files {
        let f = Files { dir: tempfile::tempdir().unwrap() };
        f.write("path.json", r#"{"vertices":["a","b","c"],"edges":[["a","b"],["b","c"]]}"#);
        f.write("c4.json", r#"{"vertices":["a","b","c","d"],"edges":[["a","b"],["b","c"],["c","d"],["d","a"]]}"#);
        f.write("f2.json", r#"{"vertices":["x","y"],"edges":[]}"#);
        f.write("loop.json", r#"{"vertices":["a"],"edges":[["a","a"]]}"#);
        f
    }

    fn write(&self, name: &str, text: &str) -> PathBuf {
        let p = self.dir.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    }

    fn path(&self, name: &str) -> String {
        self.dir.path().join(name).to_str().unwrap().to_string()
    }
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn conj_on_the_path() {
    let f = Files::new();
    let r = raagkit(&["conj", "-g", &f.path("path.json"), "a c", "c a", "--json"]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["type"], "conjugator");
    assert_eq!(v["value"], "a^-1");
    let r = raagkit(&["conj", "-g", &f.path("path.json"), "a", "c"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.contains("abelianization"));
}

#[test]
fn conj_in_a_special_subgroup() {
    let f = Files::new();
    let r = raagkit(&["conj", "-g", &f.path("path.json"), "--sub", "a", "c b", "a c b a^-1", "--json"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["value"], "a");
    let r = raagkit(&["conj", "-g", &f.path("path.json"), "--sub", "b", "a c", "c a"]);
    assert_eq!(r.code, 1);
}

#[test]
fn certificates_round_trip_through_verify() {
    let f = Files::new();
    for (graph, args) in [
        ("path.json", vec!["conj", "a c", "c a"]),
        ("path.json", vec!["conj", "a", "c"]),
        ("path.json", vec!["conj", "--sub", "a", "c b", "a c b a^-1"]),
        ("f2.json", vec!["witness", "separate", "x y", "x y^-1"]),
        ("c4.json", vec!["bb", "conj", "a b^-1", "b^-1 a"]),
    ] {
        let gp = f.path(graph);
        let mut full = args.clone();
        full.extend(["-g", &gp]);
        full.push("--json");
        let r = raagkit(&full);
        assert!(r.code <= 1, "{args:?}: {}", r.stderr);
        let cert = f.write("cert.json", &r.stdout);
        let v = raagkit(&["verify", "-g", &f.path(graph), s(&cert)]);
        assert_eq!(v.code, 0, "{args:?}: {}", r.stdout);
    }
}

#[test]
fn tampered_certificates_are_rejected() {
    let f = Files::new();
    let r = raagkit(&["conj", "-g", &f.path("path.json"), "a c", "c a", "--json"]);
    let mut v = r.json();
    v["value"] = Value::from("b");
    let cert = f.write("bad.json", &v.to_string());
    assert_eq!(raagkit(&["verify", "-g", &f.path("path.json"), s(&cert)]).code, 1);

    let r = raagkit(&["witness", "separate", "-g", &f.path("f2.json"), "x y", "x y^-1", "--json"]);
    let mut v = r.json();
    v["f"] = Value::from("y x");
    let cert = f.write("bad.json", &v.to_string());
    assert_eq!(raagkit(&["verify", "-g", &f.path("f2.json"), s(&cert)]).code, 1);
}

#[test]
fn witness_separate_is_verified() {
    let f = Files::new();
    let r = raagkit(&["witness", "separate", "-g", &f.path("f2.json"), "x y", "x y^-1", "--json"]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["verified"], true);
    assert_eq!(v["claim"], "nonconjugate");
    let r = raagkit(&["witness", "separate", "-g", &f.path("f2.json"), "x y", "y x"]);
    assert_eq!(r.code, 1);
}

#[test]
fn witness_cc_and_refine() {
    let f = Files::new();
    let k = f.write("k.json", r#"{"degree":4,"images":{"x":[1,0,3,2],"y":[2,3,0,1]}}"#);
    let r = raagkit(&["witness", "cc", "-g", &f.path("f2.json"), "x", "--k", s(&k), "--json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json()["verified"], true);
    let cert = f.write("cc.json", &r.stdout);
    assert_eq!(raagkit(&["verify", "-g", &f.path("f2.json"), s(&cert)]).code, 0);

    let r = raagkit(&["refine", "-g", &f.path("f2.json"), "--k", s(&k), "--retract", "x", "--retract", "y", "--json"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json()["verified"], true);
}

#[test]
fn bb_commands() {
    let f = Files::new();
    assert_eq!(raagkit(&["bb", "member", "-g", &f.path("c4.json"), "--psi", "bb", "a b^-1"]).code, 0);
    assert_eq!(raagkit(&["bb", "member", "-g", &f.path("c4.json"), "a b"]).code, 1);
    assert_eq!(raagkit(&["bb", "fg", "-g", &f.path("c4.json")]).code, 0);
    assert_eq!(raagkit(&["bb", "fg", "-g", &f.path("f2.json")]).code, 1);
    let map = f.write("psi.json", r#"{"rank":1,"map":{"a":[1],"b":[0],"c":[1],"d":[0]}}"#);
    assert_eq!(raagkit(&["bb", "member", "-g", &f.path("c4.json"), "--psi", s(&map), "b d"]).code, 0);
    let r = raagkit(&["bb", "conj", "-g", &f.path("c4.json"), "a c^-1", "a c^-1", "--json"]);
    assert_eq!(r.code, 0);
}

#[test]
fn word_commands() {
    let f = Files::new();
    let g = f.path("path.json");
    let r = raagkit(&["reduce", "-g", &g, "a b a^-1 c", "--json"]);
    assert_eq!(r.json()["reduced"], "b c");
    assert_eq!(r.json()["length"], 2);
    let r = raagkit(&["cyclic-reduce", "-g", &g, "c a b a^-1", "--json"]);
    assert_eq!(r.json()["core"], "b c");
    assert_eq!(raagkit(&["root", "-g", &g, "a c a c", "2"]).stdout.trim(), "a c");
    assert_eq!(raagkit(&["root", "-g", &g, "a c a", "2"]).code, 1);
    assert_eq!(raagkit(&["member", "special", "-g", &g, "--sub", "a,b", "a b a"]).code, 0);
    assert_eq!(raagkit(&["member", "special", "-g", &g, "--sub", "a,b", "a c"]).code, 1);
    assert_eq!(raagkit(&["member", "parabolic", "-g", &g, "--sub", "a", "--by", "c", "c a c^-1"]).code, 0);
    let r = raagkit(&["member", "double-coset", "-g", &g, "--left", "a", "--right", "c", "b", "a b c", "--json"]);
    assert_eq!(r.code, 0);
    assert_eq!(raagkit(&["member", "double-coset", "-g", &g, "--left", "a", "--right", "c", "b", "b b"]).code, 1);
    let r = raagkit(&["intersect", "-g", &g, "--left", "a,b", "--right", "b,c", "--json"]);
    assert_eq!(r.json()["base"], serde_json::json!(["b"]));
    let r = raagkit(&["centralizer", "-g", &g, "a", "--json"]);
    assert_eq!(r.code, 0);
    assert!(!r.json()["generators"].as_array().unwrap().is_empty());
}

#[test]
fn hnn_commands() {
    let f = Files::new();
    let base = f.write("s3.json", r#"{"degree":3,"generators":{"p":[1,0,2],"r":[1,2,0]},"assoc":["p"]}"#);
    let b = s(&base);
    let r = raagkit(&["hnn", "--base", b, "britton", "s p s^-1", "--json"]);
    assert_eq!(r.json()["syllables"], 0);
    let r = raagkit(&["hnn", "--base", b, "britton", "s r s^-1", "--json"]);
    assert_eq!(r.json()["signature"], serde_json::json!([1, -1]));
    assert_eq!(raagkit(&["hnn", "--base", b, "conj", "s r", "r s"]).code, 0);
    assert_eq!(raagkit(&["hnn", "--base", b, "conj", "s", "s^-1"]).code, 1);
    let r = raagkit(&["hnn", "--base", b, "centralizer", "s", "--json"]);
    // s together with every element of the associated subgroup {1, p}
    assert_eq!(r.json()["generators"].as_array().unwrap().len(), 3);
}

#[test]
fn errors_and_exit_codes() {
    let f = Files::new();
    assert_eq!(raagkit(&["frobnicate"]).code, 64);
    assert_eq!(raagkit(&["reduce", "a"]).code, 64);
    assert_eq!(raagkit(&["reduce", "-g", &f.path("missing.json"), "a"]).code, 66);
    let r = raagkit(&["reduce", "-g", &f.path("loop.json"), "a", "--json"]);
    assert_eq!(r.code, 65);
    let v: Value = serde_json::from_str(r.stderr.trim()).unwrap();
    assert_eq!(v["error"], "loop_edge");
    let r = raagkit(&["reduce", "-g", &f.path("path.json"), "a^2"]);
    assert_eq!(r.code, 65);
    assert!(r.stderr.contains("bad_token"));
    assert_eq!(raagkit(&["root", "-g", &f.path("path.json"), "a", "0"]).code, 64);
    assert_eq!(raagkit(&["--help"]).code, 0);
}

#[test]
fn deterministic_given_seed() {
    let f = Files::new();
    let args = ["witness", "separate", "-g", &f.path("f2.json"), "x y x^-1 y^-1", "1", "--seed", "7", "--json"];
    let a = raagkit(&args);
    let b = raagkit(&args);
    assert_eq!(a.stdout, b.stdout);
}
