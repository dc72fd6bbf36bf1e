use hgpforge::io;
use serde_json::Value;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

const C3: &str = "# 3-cycle\n3 3\n110\n011\n101\n";
const C2: &str = "2 2\n11\n11\n";

fn hgpforge(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hgpforge"))
        .current_dir(dir)
        .env_remove("HGPFORGE_JOBS")
        .args(args)
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad report ({e}): {}\n{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("c3.txt"), C3).unwrap();
        std::fs::write(dir.path().join("c2.txt"), C2).unwrap();
        Self { dir }
    }

    fn path(&self) -> &Path {
        self.dir.path()
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let p = self.path().join(name);
        std::fs::write(&p, contents).unwrap();
        p
    }

    fn run(&self, args: &[&str]) -> (i32, Value) {
        let out = hgpforge(self.path(), args);
        (out.status.code().unwrap(), report(&out))
    }

    fn toric(&self) {
        let (code, _) = self.run(&["build", "c3.txt", "c3.txt", "--level", "1", "-o", "toric.json"]);
        assert_eq!(code, 0);
    }
}

#[test]
fn build_reports_parameters() {
    let ws = Workspace::new();
    let (code, r) = ws.run(&["build", "c3.txt", "c3.txt", "--level", "1", "-o", "toric.json"]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["command"], "build");
    assert_eq!((r["results"]["n"].as_u64(), r["results"]["k"].as_u64()), (Some(18), Some(2)));
    assert_eq!(r["results"]["kunneth"]["d_x"], 3);
    assert_eq!(r["results"]["kunneth"]["d_z"], 3);
    assert_eq!(r["inputs"].as_array().unwrap().len(), 2);
    assert!(ws.path().join("toric.json").exists());

    let (code, r) = ws.run(&["build", "c2.txt", "c2.txt", "c2.txt", "--level", "1", "-o", "t3.json"]);
    assert_eq!(code, 0);
    assert_eq!((r["results"]["n"].as_u64(), r["results"]["k"].as_u64()), (Some(24), Some(3)));
}

#[test]
fn invalid_level_and_bad_input_exit_with_2() {
    let ws = Workspace::new();
    let (code, r) = ws.run(&["build", "c3.txt", "--level", "0", "-o", "x.json"]);
    assert_eq!(code, 2);
    assert_eq!(r["status"], "error");
    assert!(!ws.path().join("x.json").exists());

    ws.file("bad.txt", "2 2\n10\n0\n");
    assert_eq!(ws.run(&["build", "bad.txt", "c3.txt", "--level", "1", "-o", "x.json"]).0, 2);
    assert_eq!(ws.run(&["logicals", "missing.json"]).0, 2);
    ws.file("junk.json", "{\"t\": 2}");
    assert_eq!(ws.run(&["distance", "junk.json"]).0, 2);

    let out = hgpforge(ws.path(), &["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hgpforge(ws.path(), &["build", "c3.txt"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hgpforge(ws.path(), &["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn correctable_exit_codes() {
    let ws = Workspace::new();
    ws.toric();
    ws.file("r0.txt", "{0}\n");
    let (code, r) = ws.run(&["correctable", "toric.json", "r0.txt"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["correctable"], true);

    // a distance-3 witness from the distance command is not correctable
    let (_, d) = ws.run(&["distance", "toric.json"]);
    let w: Vec<String> = d["results"]["witness_x"].as_array().unwrap().iter().map(|v| v.to_string()).collect();
    assert_eq!(w.len(), 3);
    ws.file("rw.txt", &w.join(" "));
    let (code, r) = ws.run(&["correctable", "toric.json", "rw.txt"]);
    assert_eq!(code, 1);
    assert_eq!(r["status"], "violated");
    assert_eq!(r["results"]["correctable"], false);
    assert_eq!(r["results"]["witness_verified"], true);

    ws.file("rbad.txt", "0 99\n");
    assert_eq!(ws.run(&["correctable", "toric.json", "rbad.txt"]).0, 2);
}

#[test]
fn distance_and_bounded_distance() {
    let ws = Workspace::new();
    ws.toric();
    let (code, r) = ws.run(&["distance", "toric.json"]);
    assert_eq!(code, 0);
    assert_eq!((r["results"]["d_x"].as_u64(), r["results"]["d_z"].as_u64()), (Some(3), Some(3)));
    let (_, r) = ws.run(&["distance", "toric.json", "--max-weight", "2"]);
    assert_eq!(r["results"]["x"]["at_least"], 3);
    let (_, r) = ws.run(&["distance", "toric.json", "--max-weight", "5"]);
    assert_eq!(r["results"]["z"]["exact"], 3);
}

#[test]
fn yesgo_circuit_verifies_through_verify_diagonal() {
    let ws = Workspace::new();
    let (code, r) = ws.run(&["yesgo", "--t", "3", "--L", "2", "--circuit-out", "ccz.txt", "-o", "t3.json"]);
    assert_eq!(code, 0, "{r}");
    assert_eq!(r["results"]["logical_cnz"]["level"], 3);
    assert_eq!(r["results"]["invariance"]["preserves"], true);

    let (code, r) = ws.run(&["verify-diagonal", "t3.json", "ccz.txt", "--copies", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["results"]["preserves"], true);
    assert_eq!(r["results"]["level"], 3);

    // a lone T-like phase on one qubit breaks the codespace
    ws.file("t.txt", "MOD 3\nPHASE 1 0\n");
    let (code, r) = ws.run(&["verify-diagonal", "t3.json", "t.txt"]);
    assert_eq!(code, 1);
    assert_eq!(r["results"]["preserves"], false);

    let (code, r) = ws.run(&["yesgo", "--t", "2", "--L", "3"]);
    assert_eq!(code, 0);
    assert!(r["results"]["circuit"].as_str().unwrap().starts_with("MOD 1\n"));
    assert_eq!(ws.run(&["yesgo", "--t", "9", "--L", "2"]).0, 2);
}

#[test]
fn nogo_transversal_on_toric() {
    let ws = Workspace::new();
    ws.toric();
    let (code, r) = ws.run(&["nogo-transversal", "toric.json", "--mod", "3"]);
    assert_eq!(code, 0);
    assert!(r["results"]["max_level"].as_u64().unwrap() <= 2);
    assert_eq!(r["results"]["sample_levels"].as_array().unwrap().len(), 100);
}

#[test]
fn reports_are_deterministic_and_independent_of_jobs() {
    let ws = Workspace::new();
    ws.toric();
    let a = hgpforge(ws.path(), &["nogo-transversal", "toric.json", "--seed", "7", "--jobs", "1"]);
    let b = hgpforge(ws.path(), &["nogo-transversal", "toric.json", "--seed", "7", "--jobs", "4"]);
    let c = Command::new(env!("CARGO_BIN_EXE_hgpforge"))
        .current_dir(ws.path())
        .env("HGPFORGE_JOBS", "3")
        .args(["nogo-transversal", "toric.json", "--seed", "7"])
        .output()
        .unwrap();
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
    let d1 = hgpforge(ws.path(), &["distance", "toric.json"]);
    let d2 = hgpforge(ws.path(), &["distance", "toric.json", "--jobs", "2"]);
    assert_eq!(d1.stdout, d2.stdout);
}

#[test]
fn bundles_round_trip_through_every_command() {
    let ws = Workspace::new();
    ws.toric();
    let seeds = vec![io::parse_seeds(&[C3.to_string()]).unwrap().remove(0); 2];
    let direct = io::build_code(&seeds, 1).unwrap();
    let expected: Vec<Value> = io::logical_basis_json(direct.logical_basis().unwrap())
        .iter()
        .map(|r| serde_json::to_value(r).unwrap())
        .collect();
    let (_, r) = ws.run(&["logicals", "toric.json"]);
    assert_eq!(r["results"]["reps"].as_array().unwrap(), &expected);
    assert_eq!(r["results"]["pairing"], serde_json::json!(["10", "01"]));
    for args in [vec!["logicals", "toric.json"], vec!["distance", "toric.json"]] {
        let (_, r) = ws.run(&args);
        assert_eq!((r["results"]["n"].as_u64(), r["results"]["k"].as_u64()), (Some(18), Some(2)));
    }
    let text = std::fs::read_to_string(ws.path().join("toric.json")).unwrap();
    let again = io::parse_bundle(&text).unwrap();
    assert_eq!(io::canonical_json(&io::bundle_of(&again).unwrap()).unwrap(), text);
}
