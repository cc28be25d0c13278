use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;
use tempfile::TempDir;

const RB22: &str = r#"{"n":4,"table":[[0,1,0,1],[0,1,0,1],[2,3,2,3],[2,3,2,3]],"names":["e11","e12","e21","e22"]}"#;
const Z2: &str = r#"{"generators":["a","z"],"relations":[[["z","z"],["z"]],[["z","a"],["a"]],[["a","z"],["a"]],[["a","a"],["z"]]],"subgroup":["z"]}"#;
const NOT_ASSOC: &str = r#"{"n":2,"table":[[1,0],[0,0]]}"#;

struct Run {
    code: i32,
    stdout: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn idemgen(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_idemgen")).args(args).output().unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p: PathBuf = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn setup() -> (TempDir, String) {
    let dir = TempDir::new().unwrap();
    let table = write(dir.path(), "rb22-table.json", RB22);
    let b = idemgen(&["extract-biorder", "--table", &table]);
    assert_eq!(b.code, 0);
    let path = write(dir.path(), "rb22.json", &b.stdout);
    (dir, path)
}

#[test]
fn regular_word_exits_zero_with_certificate() {
    let (_d, rb22) = setup();
    let r = idemgen(&["regular", "--biorder", &rb22, "--word", "e11,e22"]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["verdict"], "regular");
    assert!(v["right_trajectory"].is_array());
}

#[test]
fn wp_regular_unequal_exits_one() {
    let (_d, rb22) = setup();
    let r = idemgen(&["wp-regular", "--biorder", &rb22, "--u", "e11", "--v", "e11,e22,e11", "--oracle", "free"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["equal"], false);
    let r = idemgen(&["wp-regular", "--biorder", &rb22, "--u", "e11,e12", "--v", "e12", "--oracle", "free"]);
    assert_eq!(r.code, 0);
}

#[test]
fn demo_membership_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let pres = write(dir.path(), "z2.json", Z2);
    let band = dir.path().join("bgh-z2.json");
    let band = band.to_str().unwrap();
    let r = idemgen(&["build-bgh", "--presentation", &pres, "--out", band]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["elements"], 64);
    assert!(dir.path().join("bgh-z2.provenance.json").exists());

    let r = idemgen(&["demo-membership", "--band", band, "--word", "fa_inf"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["equal"], false);

    let r = idemgen(&["demo-membership", "--band", band, "--word", "fa_inf,fa_inf"]);
    assert_eq!(r.code, 0);
    let v = r.json();
    assert_eq!(v["b_word"], serde_json::json!(["z"]));
    assert_eq!(v["chain"]["steps"].as_array().unwrap().len(), 5);

    // The stored table is an ordinary table file.
    assert_eq!(idemgen(&["validate", "--table", band]).json()["band"], true);
}

#[test]
fn tampered_provenance_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let pres = write(dir.path(), "z2.json", Z2);
    let band = dir.path().join("b.json");
    let band = band.to_str().unwrap();
    assert_eq!(idemgen(&["build-bgh", "--presentation", &pres, "--out", band]).code, 0);
    let side = dir.path().join("b.provenance.json");
    let mut prov: Value = serde_json::from_str(&fs::read_to_string(&side).unwrap()).unwrap();
    prov["subgroup"] = serde_json::json!(["a", "z"]);
    fs::write(&side, prov.to_string()).unwrap();
    let r = idemgen(&["demo-membership", "--band", band, "--word", "fa_inf"]);
    assert_eq!(r.code, 2);
    assert!(r.json()["error"]["code"].is_string());
}

#[test]
fn input_errors_exit_two_with_code() {
    let (dir, rb22) = setup();
    let r = idemgen(&["regular", "--biorder", &rb22, "--word", "e11,nope"]);
    assert_eq!(r.code, 2);
    assert_eq!(r.json()["error"]["code"], "unknown-element");
    let bad = write(dir.path(), "bad.json", "{");
    assert_eq!(idemgen(&["green", "--table", &bad]).json()["error"]["code"], "malformed-input");
    let missing = idemgen(&["green", "--table", "/nonexistent/t.json"]);
    assert_eq!(missing.code, 2);
    assert_eq!(missing.json()["error"]["code"], "io");
}

#[test]
fn capability_errors_exit_three() {
    let (_d, rb22) = setup();
    // The maximal subgroup of RB(2,2) is infinite cyclic, so enumeration overflows.
    let r = idemgen(&["wp-regular", "--biorder", &rb22, "--u", "e11", "--v", "e11,e22,e11", "--oracle", "finite", "--cap", "8"]);
    assert_eq!(r.code, 3);
    assert_eq!(r.json()["error"]["code"], "overflow");
}

#[test]
fn validate_reports_non_associative_tables() {
    let dir = TempDir::new().unwrap();
    let t = write(dir.path(), "t.json", NOT_ASSOC);
    let r = idemgen(&["validate", "--table", &t]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["associative"], false);
}

#[test]
fn structural_verbs() {
    let (dir, rb22) = setup();
    let table = dir.path().join("rb22-table.json");
    let table = table.to_str().unwrap();
    let g = idemgen(&["green", "--table", table]).json();
    assert_eq!(g["d_classes"].as_array().unwrap().len(), 1);
    assert!(idemgen(&["eggbox", "--table", table]).json()["dot"].as_str().unwrap().contains("digraph"));
    let r = idemgen(&["ig-green", "--biorder", &rb22, "--e", "e11", "--f", "e22", "--rel", "r"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.json()["D"], true);
    let s = idemgen(&["schreier", "--biorder", &rb22, "--e", "e11"]).json();
    assert_eq!(s["r"], serde_json::json!(["", "e12"]));
    let p = idemgen(&["present-f", "--biorder", &rb22, "--e", "e11", "--cap", "16"]).json();
    assert_eq!(p["abelianization"]["free_rank"], 1);
    assert!(p["order"].is_null());
    let p = idemgen(&["present-b", "--biorder", &rb22, "--e", "e11"]).json();
    assert!(p["presentation"]["generators"].is_array());
    let rees = idemgen(&["rees", "--biorder", &rb22, "--e", "e11", "--oracle", "free", "--seed", "3"]).json();
    assert_eq!(rees["round_trip"]["failures"], serde_json::json!([]));
}

#[test]
fn pi_and_rho() {
    let (_d, rb22) = setup();
    let pi = idemgen(&["pi", "--biorder", &rb22, "--e", "e11", "--word", "e12,e21"]).json();
    assert_eq!(pi["triple"], "(1, f1_2,f2_2^-1,f2_1, 1)");
    let rho = idemgen(&["rho", "--biorder", &rb22, "--e", "e11", "--i", "1", "--word", "f1_2", "--j", "2"]).json();
    let w = rho["word"].as_str().unwrap().to_string();
    let back = idemgen(&["pi", "--biorder", &rb22, "--e", "e11", "--word", &w]).json();
    assert_eq!(back["i"], "1");
    assert_eq!(back["j"], "2");
}

#[test]
fn group_verbs() {
    let dir = TempDir::new().unwrap();
    let p = write(dir.path(), "c2.json", r#"{"generators":["a"],"relations":[[["a","a"],[]]],"subgroup":[]}"#);
    let n = idemgen(&["normalize", "--presentation", &p]).json();
    assert_eq!(n["generators"], serde_json::json!(["a", "z"]));
    assert_eq!(n["triples"].as_array().unwrap().len(), 4);
    let m = idemgen(&["mihailova", "--presentation", &p]).json();
    assert_eq!(m["bgens"].as_array().unwrap().len(), 2);
    // A normalized file is accepted as is.
    let np = write(dir.path(), "n.json", &n.to_string());
    assert_eq!(idemgen(&["build-bgh", "--presentation", &np]).json()["elements"], 64);
}

#[test]
fn json_output_is_deterministic_and_reparses() {
    let (_d, rb22) = setup();
    for args in [
        vec!["regular", "--biorder", rb22.as_str(), "--word", "e21,e12"],
        vec!["rees", "--biorder", rb22.as_str(), "--e", "e22", "--seed", "9"],
        vec!["schreier", "--biorder", rb22.as_str(), "--e", "e22"],
    ] {
        let a = idemgen(&args);
        let b = idemgen(&args);
        assert_eq!(a.stdout, b.stdout);
        let v = a.json();
        assert_eq!(serde_json::from_str::<Value>(&v.to_string()).unwrap(), v);
    }
}

#[test]
fn text_mode_is_aligned() {
    let (_d, rb22) = setup();
    let r = idemgen(&["regular", "--biorder", &rb22, "--word", "e11", "--format", "text"]);
    assert_eq!(r.code, 0);
    let cols: Vec<usize> = r.stdout.lines().map(|l| l.find("  ").unwrap() + l[l.find("  ").unwrap()..].find(|c: char| c != ' ').unwrap()).collect();
    assert!(cols.windows(2).all(|w| w[0] == w[1]), "{}", r.stdout);
}
