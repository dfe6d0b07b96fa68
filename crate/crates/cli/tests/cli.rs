//! Golden runs of the binary: outputs, exit codes, determinism.

use std::process::{Command, Output};

fn fcrystal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fcrystal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(args: &[&str]) -> (String, i32) {
    let out = fcrystal(args);
    (String::from_utf8(out.stdout).unwrap(), out.status.code().unwrap())
}

#[test]
fn gamma_examples() {
    let (s, code) = stdout_of(&["gamma", "--r", "2", "--perm", "(1 2)", "--slopes", "0,4", "--m-max", "6"]);
    assert_eq!(code, 0);
    assert!(s.contains("γ = 0,1,2,3,4,4,4\n"), "{s}");
    assert!(s.contains("stabilization = 4"));

    let (s, _) = stdout_of(&["gamma", "--r", "2", "--perm", "(1 2)", "--slopes", "0,1", "--m-max", "3"]);
    assert!(s.contains("γ = 0,1,1,1\n"), "{s}");
    assert!(s.contains("nonordinary"));

    let (s, _) = stdout_of(&["gamma", "--r", "3", "--perm", "1 2 3", "--slopes", "0,0,0", "--m-max", "2"]);
    assert!(s.contains("γ = 0,0,0\n"), "{s}");
    assert!(s.contains("\nordinary\n"));
}

#[test]
fn endo_examples() {
    let (s, _) = stdout_of(&["endo", "--r", "2", "--perm", "1 2", "--slopes", "0,0", "--m", "3"]);
    assert!(s.contains("m = 3: b = 12\n"), "{s}");
    let (s, _) = stdout_of(&["endo", "--r", "2", "--perm", "(1 2)", "--slopes", "0,1", "--m", "1"]);
    assert!(s.contains("m = 1: b = 2\n"), "{s}");
    let (s, _) = stdout_of(&["endo", "--r", "2", "--perm", "(1 2)", "--slopes", "0,1", "--m", "1", "--prime", "2"]);
    assert!(s.contains("b = 2, p^b = 4\n"), "{s}");
    let (s, _) = stdout_of(&["endo", "--perm", "()", "--slopes", "0,0,0,0", "--m", "16", "--prime", "7"]);
    // 7^(16·16)
    let expected = num_bigint::BigUint::from(7u32).pow(256).to_string();
    assert!(s.contains(&format!("p^b = {expected}")));
}

#[test]
fn verify_examples() {
    let (s, code) = stdout_of(&["verify", "--r-max", "3", "--slope-max", "1", "--m-max", "4"]);
    assert_eq!(code, 0);
    assert!(s.ends_with(": 0 mismatches\n"), "{s}");

    let (s, code) = stdout_of(&["verify", "--seq", "3,0,-1,-2", "--m", "5"]);
    assert_eq!(code, 0);
    assert!(s.contains("ℓ=3, c=2, w=8 (oracle); ℓ=3, c=2 (formula); matches"), "{s}");

    let (s, code) = stdout_of(&["verify", "--seq", "0,0", "--m", "4"]);
    assert_eq!(code, 0);
    assert!(s.contains("ℓ=0, c=4, w=8 (oracle); ℓ=0, c=4 (formula); matches"), "{s}");

    let (s, code) = stdout_of(&["verify", "--perm", "(1 2 3)", "--slopes", "0,1,2", "--m-max", "5"]);
    assert_eq!(code, 0);
    assert!(s.contains("0 mismatches"));
}

#[test]
fn scan_examples() {
    let (s, code) = stdout_of(&["scan", "--family", "circular-dieudonne", "--r", "4", "--m-max", "6"]);
    assert_eq!(code, 0);
    assert!(s.contains("\n0 strictness violations\n"), "{s}");

    let (s, code) = stdout_of(&["scan", "--family", "all-dieudonne", "--r", "3", "--m-max", "5", "--check", "ratio"]);
    assert_eq!(code, 0);
    assert!(s.contains("ratio=0"), "{s}");

    let (s, code) = stdout_of(&["scan", "--family", "circular-fcrystal", "--r", "2", "--slope-max", "4", "--m-max", "6"]);
    assert_eq!(code, 0);
    for e in 2..=4 {
        let line = s
            .lines()
            .find(|l| l.starts_with(&format!("π = (1 2), E = (0,{e}):")))
            .unwrap();
        assert!(line.contains("constant-Δγ"), "{line}");
    }
    let line = s.lines().find(|l| l.starts_with("π = (1 2), E = (0,1):")).unwrap();
    assert!(!line.contains("constant-Δγ"));
}

#[test]
fn minimal_examples() {
    let (s, code) = stdout_of(&["minimal", "--perm", "(1 2)", "--slopes", "0,1"]);
    assert_eq!(code, 0);
    assert!(s.contains("minimal = true\nNewton slopes = {1/2,1/2}\n"), "{s}");
    assert!(s.contains("cross-check (minimal ⟺ stabilization ≤ 1): ok"));

    let (s, _) = stdout_of(&["minimal", "--perm", "(1 2 3 4)", "--slopes", "0,0,1,1"]);
    assert!(s.contains("minimal = false\n"), "{s}");

    let (s, _) = stdout_of(&["minimal", "--perm", "()", "--slopes", "0,0,0"]);
    assert!(s.contains("minimal = true\n"), "{s}");
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| fcrystal(args).status.code().unwrap();
    assert_eq!(code(&["minimal", "--perm", "(1 2)", "--slopes", "0,2"]), 2);
    assert_eq!(code(&["gamma", "--perm", "(1 2", "--slopes", "0,1", "--m", "2"]), 2);
    assert_eq!(code(&["gamma", "--perm", "(1 3)", "--slopes", "0,1", "--m", "2"]), 2);
    assert_eq!(code(&["gamma", "--perm", "(1 2)", "--slopes", "0,1,1", "--r", "2", "--m", "2"]), 2);
    assert_eq!(code(&["gamma", "--perm", "(1 2)", "--slopes", "0,1"]), 2);
    assert_eq!(code(&["endo", "--perm", "(1 2)", "--slopes", "0,1", "--m", "1", "--prime", "4"]), 2);
    assert_eq!(code(&["gamma", "--perm", "(1 2)", "--slopes", "0,1", "--m", "17"]), 3);
    assert_eq!(code(&["gamma", "--perm", "(1 2)", "--slopes", "0,1", "--m", "17", "--max-m", "20"]), 0);
    assert_eq!(code(&["scan", "--family", "all-dieudonne", "--r", "9", "--m-max", "2"]), 3);
    assert_eq!(
        code(&["scan", "--family", "all-dieudonne", "--r", "5", "--m-max", "2", "--max-records", "100"]),
        3
    );
    assert_eq!(code(&["verify", "--seq", "1,-1", "--m", "4", "--vertex-budget", "7"]), 3);
    assert_eq!(code(&["gamma", "--perm", "(1 2)", "--slopes", "0,4000000000", "--m", "2"]), 3);
}

#[test]
fn json_is_versioned_and_deterministic() {
    let args = ["gamma", "--perm", "(1 3 2)(4)", "--slopes", "1,0,1,0", "--m-max", "5", "--format", "json"];
    let a = fcrystal(&args).stdout;
    let b = fcrystal(&args).stdout;
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(v["schema"], "fcrystal.gamma.v1");
    assert_eq!(v["input"]["perm"], "(1 3 2)");
    assert_eq!(v["gamma"].as_array().unwrap().len(), 6);
    assert_eq!(v["orbits"].as_array().unwrap().iter().map(|o| o["length"].as_u64().unwrap()).sum::<u64>(), 16);

    let scan = ["scan", "--family", "all-dieudonne", "--r", "3", "--m-max", "4", "--format", "json", "--jobs", "1"];
    let serial = fcrystal(&scan).stdout;
    let mut parallel = scan.to_vec();
    *parallel.last_mut().unwrap() = "4";
    assert_eq!(serial, fcrystal(&parallel).stdout);
    let v: serde_json::Value = serde_json::from_slice(&serial).unwrap();
    assert_eq!(v["schema"], "fcrystal.scan.v1");
    assert_eq!(v["summary"]["records"], 6 * 8);
}

#[test]
fn csv_scan_has_one_row_per_crystal() {
    let (s, code) = stdout_of(&["scan", "--family", "circular-dieudonne", "--r", "3", "--m-max", "4", "--format", "csv"]);
    assert_eq!(code, 0);
    let mut rows = csv::Reader::from_reader(s.as_bytes());
    assert_eq!(rows.headers().unwrap().get(0), Some("perm"));
    assert_eq!(rows.records().count(), 2 * 8);
}

#[test]
fn out_file_and_digraph_dump() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.csv");
    let dot = dir.path().join("graph.dot");
    let status = fcrystal(&[
        "verify", "--seq", "3,-3", "--m", "5", "--format", "csv",
        "--out", out.to_str().unwrap(), "--dump-digraph", dot.to_str().unwrap(),
    ]);
    assert_eq!(status.status.code(), Some(0));
    assert!(status.stdout.is_empty());
    let report = std::fs::read_to_string(&out).unwrap();
    assert_eq!(report.lines().nth(1), Some("5,3,2,4,3,2,true"));
    let dot = std::fs::read_to_string(&dot).unwrap();
    assert!(dot.starts_with("digraph \"seq\" {"));
    assert_eq!(dot.matches(" -> ").count(), 7);
    assert_eq!(dot.matches("zero=true").count(), 0);

    let dot = dir.path().join("orbits.dot");
    let status = fcrystal(&[
        "gamma", "--perm", "(1 2)", "--slopes", "0,1", "--m", "2", "--dump-digraph", dot.to_str().unwrap(),
    ]);
    assert_eq!(status.status.code(), Some(0));
    let dot = std::fs::read_to_string(&dot).unwrap();
    assert_eq!(dot.matches("digraph ").count(), 2);
}

#[test]
fn permutation_forms_agree() {
    let a = stdout_of(&["gamma", "--perm", "2 3 1", "--slopes", "0,0,1", "--m-max", "4", "--format", "json"]);
    let b = stdout_of(&["gamma", "--perm", "(1,2,3)", "--slopes", "0,0,1", "--m-max", "4", "--format", "json"]);
    assert_eq!(a, b);
}
