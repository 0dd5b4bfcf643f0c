// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const SAMPLE_DB: &str = "# example\n0101000\n1000110\n1010110\n0110101\n";

fn gdict(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gdict"))
        .args(args)
        .current_dir(dir)
        .env_remove("GDICT_MAX_QUBITS")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    assert_eq!(
        out.status.code(),
        Some(0),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn workspace() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("sample.db"), SAMPLE_DB).unwrap();
    dir
}

#[test]
fn synth_dict_writes_circuit_and_sidecar() {
    let dir = workspace();
    let out = gdict(dir.path(), &["synth-dict", "sample.db", "--out", "sample.circ"]);
    assert_eq!(out.status.code(), Some(0));
    let circuit = std::fs::read_to_string(dir.path().join("sample.circ")).unwrap();
    let sidecar: Value =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("sample.json")).unwrap()).unwrap();
    let mcx_lines = circuit.lines().filter(|l| l.starts_with("MCX")).count();
    assert_eq!(sidecar["mcx_count"].as_u64().unwrap() as usize, mcx_lines);
    assert_eq!(sidecar["m"], 2);
    assert_eq!(sidecar["n"], 7);
    assert_eq!(sidecar["cubes_per_column"].as_array().unwrap().len(), 7);
    assert_eq!(sidecar["records"][2], "1010110");
}

#[test]
fn synth_dict_reports_padding() {
    let dir = workspace();
    std::fs::write(dir.path().join("three.db"), "01\n10\n11\n").unwrap();
    let v = json(&gdict(dir.path(), &["synth-dict", "three.db"]));
    assert_eq!(v["original_records"], 3);
    assert_eq!(v["records"].as_array().unwrap().len(), 4);
    assert_eq!(v["records"][3], "01");
}

#[test]
fn bad_database_files_fail_with_line_numbers() {
    let dir = workspace();
    std::fs::write(dir.path().join("empty.db"), "").unwrap();
    let out = gdict(dir.path(), &["synth-dict", "empty.db"]);
    assert_eq!(out.status.code(), Some(1));

    std::fs::write(dir.path().join("ragged.db"), "0101\n011\n").unwrap();
    let out = gdict(dir.path(), &["synth-dict", "ragged.db"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn grover_search_finds_the_record() {
    let dir = workspace();
    let v = json(&gdict(dir.path(), &["grover-search", "sample.db", "1010110"]));
    assert_eq!(v["top_index"], 2);
    assert_eq!(v["top_record"], "1010110");
    assert_eq!(v["rounds"], 1);
    assert!((v["probability"].as_f64().unwrap() - 1.0).abs() < 1e-9);

    let v = json(&gdict(dir.path(), &["grover-search", "sample.db", "xxxxxxx"]));
    assert_eq!(v["rounds"], 0);
    assert_eq!(v["plan"]["winner_count"], 4);
    for p in v["distribution"].as_object().unwrap().values() {
        assert!((p.as_f64().unwrap() - 0.25).abs() < 1e-12);
    }

    let out = gdict(dir.path(), &["grover-search", "sample.db", "10101"]);
    assert_eq!(out.status.code(), Some(1));
    let out = gdict(dir.path(), &["grover-search", "sample.db", "1111111"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn grover_search_options() {
    let dir = workspace();
    let v = json(&gdict(
        dir.path(),
        &[
            "grover-search",
            "sample.db",
            "1010110",
            "--mode",
            "ancilla-kickback",
            "--precision",
            "single",
        ],
    ));
    assert_eq!(v["qubits"], 10);
    assert!((v["probability"].as_f64().unwrap() - 1.0).abs() < 1e-5);

    let out = gdict(dir.path(), &["grover-search", "sample.db", "1010110", "--format", "csv"]);
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).lines().next(),
        Some("value,probability")
    );

    let out = gdict(dir.path(), &["grover-search", "sample.db", "1010110", "--out", "r.json"]);
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("top index 2 (10) record 1010110"));
    assert!(dir.path().join("r.json").exists());
}

#[test]
fn qubit_cap_from_flag_and_environment() {
    let dir = workspace();
    let out = gdict(
        dir.path(),
        &["grover-search", "sample.db", "1010110", "--max-qubits", "8"],
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("capacity"));

    let out = Command::new(env!("CARGO_BIN_EXE_gdict"))
        .args(["grover-search", "sample.db", "1010110"])
        .current_dir(dir.path())
        .env("GDICT_MAX_QUBITS", "8")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = gdict(
        dir.path(),
        &["grover-search", "sample.db", "1010110", "--max-qubits", "64"],
    );
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn verify_arith_families() {
    let dir = workspace();
    let v = json(&gdict(dir.path(), &["verify-arith", "adder", "--n", "3"]));
    assert_eq!((v["cases"].as_u64(), v["passed"].as_u64()), (Some(64), Some(64)));
    let out = gdict(
        dir.path(),
        &["verify-arith", "modexp", "--g", "3", "-N", "7", "--format", "text"],
    );
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "modexp g=3 N=7: 8/8 pass");
    let out = gdict(dir.path(), &["verify-arith", "modadd", "-N", "6"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("2^k - 1"));
}

#[test]
fn verify_arith_emits_circuit() {
    let dir = workspace();
    let out = gdict(
        dir.path(),
        &["verify-arith", "modmul", "--a", "3", "--emit", "mul.circ"],
    );
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(dir.path().join("mul.circ")).unwrap();
    let reg = |name: &str| -> Vec<usize> {
        let line = text.lines().find(|l| l.starts_with(&format!("REG {name} "))).unwrap();
        line.rsplit(' ')
            .next()
            .unwrap()
            .split(',')
            .map(|q| q[1..].parse().unwrap())
            .collect()
    };
    let mut init = 0u64;
    let mut put = |qubits: Vec<usize>, value: u64| {
        for (i, q) in qubits.into_iter().enumerate() {
            init |= (value >> i & 1) << q;
        }
    };
    put(reg("ctrl"), 1);
    put(reg("input"), 4);
    put(reg("m"), 7);
    let sim = json(&gdict(
        dir.path(),
        &[
            "simulate",
            "mul.circ",
            "--init",
            &init.to_string(),
            "--register",
            "output",
        ],
    ));
    assert_eq!(sim["distribution"]["5"], 1.0);
}

#[test]
fn dh_attack_modes() {
    let dir = workspace();
    let v = json(&gdict(
        dir.path(),
        &["dh-attack", "--p", "7", "--g", "3", "--secret", "4", "--count", "4"],
    ));
    assert_eq!(v["recovered"], 4);
    assert!((v["probability"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    assert_eq!(v["mode"], "circuit_oracle");
    let out = gdict(
        dir.path(),
        &[
            "dh-attack",
            "--p",
            "7",
            "--g",
            "3",
            "--secret",
            "4",
            "--count",
            "2",
            "--mode",
            "precomputed",
        ],
    );
    let raw = String::from_utf8_lossy(&out.stdout);
    let keys = [
        "params",
        "target",
        "candidates",
        "mode",
        "rounds",
        "distribution",
        "recovered",
        "probability",
        "qubits",
        "gates",
    ];
    let positions: Vec<usize> = keys.iter().map(|k| raw.find(&format!("\"{k}\":")).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{raw}");

    let v = json(&gdict(
        dir.path(),
        &[
            "dh-attack",
            "--p",
            "31",
            "--g",
            "3",
            "--secret",
            "9",
            "--count",
            "8",
            "--mode",
            "precomputed",
        ],
    ));
    assert_eq!(v["rounds"], 2);
    assert!((v["probability"].as_f64().unwrap() - 0.9453125).abs() < 1e-6);

    let out = gdict(dir.path(), &["dh-attack", "--p", "15", "--g", "2", "--secret", "3"]);
    assert_eq!(out.status.code(), Some(1));
    let out = gdict(dir.path(), &["dh-attack", "--p", "7", "--g", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn simulate_circuits() {
    let dir = workspace();
    gdict(dir.path(), &["synth-dict", "sample.db", "--out", "sample.circ"]);
    let v = json(&gdict(
        dir.path(),
        &["simulate", "sample.circ", "--init", "2", "--register", "data"],
    ));
    assert_eq!(v["distribution"]["86"], 1.0);

    std::fs::write(dir.path().join("empty.circ"), "# nothing\n").unwrap();
    let v = json(&gdict(dir.path(), &["simulate", "empty.circ"]));
    assert_eq!(v["distribution"]["0"], 1.0);

    std::fs::write(dir.path().join("h.circ"), "H q0\nH q1\n").unwrap();
    let out = gdict(dir.path(), &["simulate", "h.circ", "--format", "csv"]);
    let lines: Vec<String> = String::from_utf8_lossy(&out.stdout).lines().map(String::from).collect();
    assert_eq!(lines.len(), 5);
    for line in &lines[1..] {
        let p: f64 = line.split(',').nth(1).unwrap().parse().unwrap();
        assert!((p - 0.25).abs() < 1e-12);
    }

    std::fs::write(dir.path().join("bad.circ"), "H q0\nCNOT q0 q1\n").unwrap();
    let out = gdict(dir.path(), &["simulate", "bad.circ"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn gatecount_reports_kinds() {
    let dir = workspace();
    std::fs::write(dir.path().join("c.circ"), "H q0\nMCX [+q0,-q1,+q2] q3\nMCZ [+q0,+q1]\n").unwrap();
    let v = json(&gdict(dir.path(), &["gatecount", "c.circ", "--decompose"]));
    assert_eq!(v["total"], 3);
    assert_eq!(v["counts"]["MCX"], 1);
    assert_eq!(v["counts"]["CCX_EQUIV"], 4);
}

#[test]
fn usage_errors_exit_with_one() {
    let dir = workspace();
    assert_eq!(gdict(dir.path(), &["frobnicate"]).status.code(), Some(1));
    assert_eq!(gdict(dir.path(), &["grover-search"]).status.code(), Some(1));
    assert_eq!(gdict(dir.path(), &["--help"]).status.code(), Some(0));
}
