use std::path::Path;
use std::process::Command;

use tnplanar::cli::main_with_args;
use tnplanar::format::{network_from_json, network_to_json};
use tnplanar::planar::check_planarity;
use tnplanar::{NetworkBuilder, Tensor};

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut argv = vec!["tnplanar"];
    argv.extend_from_slice(args);
    let code = main_with_args(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn k5_json() -> String {
    let mut b = NetworkBuilder::new();
    for _ in 0..5 {
        b.add_vertex(Tensor::symmetric_u64(&[1, 1, 1, 1, 1]));
    }
    let mut used = [0usize; 5];
    for a in 0..5 {
        for c in a + 1..5 {
            b.connect_ports(a, used[a], c, used[c]);
            used[a] += 1;
            used[c] += 1;
        }
    }
    network_to_json(&b.build().unwrap())
}

const TWO_VERTEX: &str = r#"{"vertices":[
  {"id":0,"tensor":{"kind":"dense","arity":1,"values":["1","1"]}},
  {"id":1,"tensor":{"kind":"dense","arity":1,"values":["1","1"]}}],
  "edges":[[[0,0],[1,0]]],"external":[]}"#;

#[test]
fn contract_prints_value_and_stats() {
    let dir = tempfile::tempdir().unwrap();
    let net = write(dir.path(), "two.json", TWO_VERTEX);
    let stats = dir.path().join("stats.json");
    for strategy in ["separator", "greedy", "brute"] {
        let (code, out, _) = run(&["contract", &net, "--strategy", strategy, "--stats-json", stats.to_str().unwrap()]);
        assert_eq!((code, out.trim()), (0, "2"));
        let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&stats).unwrap()).unwrap();
        assert_eq!(v["value"], "2");
        assert!(v["max_rank"].is_u64() && v["merges"].is_u64() && v["wall_ms"].is_u64());
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["contract", "/nonexistent/net.json"]).0, 1);
    let bad = write(dir.path(), "bad.json", "{not json");
    assert_eq!(run(&["contract", &bad]).0, 1);
    let k5 = write(dir.path(), "k5.json", &k5_json());
    let (code, _, err) = run(&["contract", &k5, "--strategy", "separator"]);
    assert_eq!(code, 2);
    assert!(err.contains("planar"), "{err}");
    assert_eq!(run(&["contract", &k5, "--strategy", "greedy"]).1.trim(), "1024");
    assert_eq!(run(&["frobnicate"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
    let bad_cnf = write(dir.path(), "bad.cnf", "p cnf 2 1\n1 x 0\n");
    assert_eq!(run(&["count", &bad_cnf]).0, 1);
}

#[test]
fn count_with_oracle_and_both_variants() {
    let dir = tempfile::tempdir().unwrap();
    let cnf = write(dir.path(), "f.cnf", "c example\np cnf 3 2\n1 2 0\n-1 2 0\n");
    for variant in ["standard", "restricted"] {
        let (code, out, err) = run(&["count", &cnf, "--oracle", "--variant", variant]);
        assert_eq!(code, 0, "{err}");
        // x3 is unused and doubles the count
        assert_eq!(out.trim(), "4");
        assert!(err.contains("unused"));
    }
    let unsat = write(dir.path(), "u.cnf", "p cnf 1 2\n1 0\n-1 0\n");
    assert_eq!(run(&["count", &unsat, "--strategy", "greedy"]).1.trim(), "0");
    let short = write(dir.path(), "s.cnf", "p cnf 2 3\n1 2 0\n");
    let (code, out, err) = run(&["count", &short, "--reduce-first"]);
    assert_eq!((code, out.trim()), (0, "3"));
    assert!(err.contains("warning"));
}

#[test]
fn planarize_and_reduce_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = write(dir.path(), "k5.json", &k5_json());
    let planar = dir.path().join("planar.json");
    let (code, _, err) = run(&["planarize", &k5, "-o", planar.to_str().unwrap(), "--seed", "3"]);
    assert_eq!(code, 0);
    assert!(err.contains("crossings replaced"));
    let net = network_from_json(&std::fs::read_to_string(&planar).unwrap()).unwrap();
    assert!(check_planarity(&net).is_planar());
    let (code, out, _) = run(&["reduce-degree", planar.to_str().unwrap(), "--threshold", "3"]);
    assert_eq!(code, 0);
    let reduced = network_from_json(&out).unwrap();
    assert!((0..reduced.num_vertices()).all(|p| reduced.degree(p) <= 5));
    let path = write(dir.path(), "reduced.json", &out);
    assert_eq!(run(&["contract", &path]).1.trim(), "1024");
}

#[test]
fn verify_gadgets_table() {
    let (code, out, _) = run(&["verify-gadgets"]);
    assert_eq!(code, 0);
    assert!(out.lines().count() >= 15);
    assert!(out.lines().all(|l| l.ends_with("PASS")));
    let (code, out, _) = run(&["verify-gadgets", "--inject-fault"]);
    assert_eq!(code, 2);
    assert!(out.contains("FAIL"));
}

#[test]
fn bench_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let (code, _, err) = run(&["bench", "--sizes", "16,36,64", "--no-timing", "--csv", p.to_str().unwrap()]);
        assert_eq!(code, 0);
        assert!(err.contains("slope"));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("family,N,max_rank,wall_ms,value_digest\n"));
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn binary_exit_status() {
    let exe = env!("CARGO_BIN_EXE_tnplanar");
    let ok = Command::new(exe).arg("verify-gadgets").output().unwrap();
    assert!(ok.status.success());
    let missing = Command::new(exe).args(["count", "/nonexistent.cnf"]).output().unwrap();
    assert_eq!(missing.status.code(), Some(1));
}
