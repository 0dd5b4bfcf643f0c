// SPDX-License-Identifier: Apache-2.0

//! Acceptance criteria. Each test prints one `criterion N: PASS|FAIL` line
//! straight to stdout (bypassing capture) before asserting.

use std::io::Write;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use gdict::dh::{generate_candidates, run_attack, AttackMode, AttackOptions, DHParams};
use gdict::dictionary::{build_dictionary, Database};
use gdict::grover::{diffuser, run_search, success_probability, Clause, OracleMode, SearchOptions};
use gdict::modarith::verify::{
    verify_adder, verify_modexp, verify_modular_adder, verify_multiplier, verify_subtractor,
};
use gdict::sim::{Register, StateVector};
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SAMPLE: [&str; 4] = ["0101000", "1000110", "1010110", "0110101"];

fn report(criterion: u32, ok: bool, detail: &str) {
    let status = if ok { "PASS" } else { "FAIL" };
    let _ = writeln!(std::io::stdout().lock(), "criterion {criterion}: {status} {detail}");
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn random_database(rng: &mut ChaCha8Rng, count: usize, width: usize) -> Database {
    let records = (0..count).map(|_| rng.gen_range(0..1u64 << width)).collect();
    Database::from_values(width, records).unwrap()
}

#[test]
fn criterion_1_worked_example() {
    let start = Instant::now();
    let db = Database::new(&SAMPLE).unwrap();
    let r = run_search(&db, &Clause::parse("1010110").unwrap(), &SearchOptions::default()).unwrap();
    let elapsed = start.elapsed();
    let ok =
        r.top_index == 0b10 && r.rounds == 1 && (r.probability - 1.0).abs() <= 1e-9 && elapsed < Duration::from_secs(1);
    report(
        1,
        ok,
        &format!(
            "index {:02b}, R={}, p={:.12}, {:?}",
            r.top_index, r.rounds, r.probability, elapsed
        ),
    );
}

/// Checks `ℛ|i⟩|0⟩ = |i⟩|R_i⟩` and `ℛℛ|i⟩|0⟩ = |i⟩|0⟩` for every index.
fn dictionary_faithful(db: &Database) -> bool {
    let dict = build_dictionary(db).unwrap();
    let data = dict.data_register().clone();
    let padded = db.padded();
    (0..padded.len()).all(|i| {
        let mut s = StateVector::<f64>::new(dict.circuit.num_qubits, i as u64).unwrap();
        s.apply_circuit(&dict.circuit).unwrap();
        let loaded = s.amplitude(data.deposit(i, padded.record(i)));
        s.apply_circuit(&dict.circuit).unwrap();
        let back = s.amplitude(i);
        (loaded - Complex64::new(1.0, 0.0)).norm() <= 1e-9 && (back - Complex64::new(1.0, 0.0)).norm() <= 1e-9
    })
}

#[test]
fn criterion_2_dictionary_fidelity() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut good = dictionary_faithful(&Database::new(&SAMPLE).unwrap()) as usize;
    for _ in 0..200 {
        let m = rng.gen_range(1..=5);
        let count = rng.gen_range((1usize << (m - 1)) + 1..=1 << m);
        let width = rng.gen_range(1..=12);
        good += dictionary_faithful(&random_database(&mut rng, count, width)) as usize;
    }
    let elapsed = start.elapsed();
    report(
        2,
        good == 201 && elapsed < Duration::from_secs(30),
        &format!("{good}/201 databases, {elapsed:?}"),
    );
}

/// `n` distinct 6-bit records, the first `winners` of them equal to the
/// clause value, in shuffled order.
fn planted_database(rng: &mut ChaCha8Rng, n: usize, winners: usize) -> (Database, Clause) {
    let value = 0b101010u64;
    let mut others: Vec<u64> = (0..64).filter(|&v| v != value).collect();
    others.shuffle(rng);
    let mut records = vec![value; winners];
    records.extend(&others[..n - winners]);
    records.shuffle(rng);
    (Database::from_values(6, records).unwrap(), Clause::exact(value, 6))
}

#[test]
fn criterion_3_success_probability_grid() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst = 0.0f64;
    let mut cases = 0;
    for n in [4usize, 8, 16, 32] {
        for m in [1usize, 2, 4] {
            let (db, clause) = planted_database(&mut rng, n, m);
            for rounds in 0..=6 {
                let opts = SearchOptions {
                    rounds: Some(rounds),
                    ..Default::default()
                };
                let r = run_search(&db, &clause, &opts).unwrap();
                let expected = success_probability(n as u64, m as u64, rounds).unwrap();
                worst = worst.max((r.winner_probability - expected).abs());
                cases += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        3,
        worst <= 1e-6 && elapsed < Duration::from_secs(120),
        &format!("{cases} cases, max deviation {worst:.2e}, {elapsed:?}"),
    );
}

#[test]
fn criterion_4_inversion_about_mean() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let reg = Register::contiguous("r", 0, 3);
    let gates = diffuser(&reg);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let raw: Vec<Complex64> = (0..8)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let amps: Vec<Complex64> = raw.iter().map(|a| a / norm).collect();
        let mean = amps.iter().sum::<Complex64>() / 8.0;
        let expected: Vec<Complex64> = amps.iter().map(|a| 2.0 * mean - a).collect();

        let mut s = StateVector::from_amplitudes(amps).unwrap();
        s.apply_gates(&gates).unwrap();
        let out = s.amplitudes();
        let k = (0..8)
            .max_by(|&i, &j| expected[i].norm().total_cmp(&expected[j].norm()))
            .unwrap();
        let phase = out[k] / expected[k];
        let dev = out
            .iter()
            .zip(&expected)
            .map(|(o, e)| (o - e * phase).norm())
            .fold(0.0, f64::max);
        worst = worst.max(dev).max((phase.norm() - 1.0).abs());
    }
    report(4, worst <= 1e-9, &format!("100 states, max deviation {worst:.2e}"));
}

fn mode_gap(db: &Database, clause: &Clause) -> f64 {
    let a = run_search(db, clause, &SearchOptions::default()).unwrap();
    let opts = SearchOptions {
        mode: OracleMode::AncillaKickback,
        ..Default::default()
    };
    let b = run_search(db, clause, &opts).unwrap();
    a.distribution
        .keys()
        .chain(b.distribution.keys())
        .map(|k| (a.distribution.get(k).unwrap_or(&0.0) - b.distribution.get(k).unwrap_or(&0.0)).abs())
        .fold(0.0, f64::max)
}

#[test]
fn criterion_5_oracle_modes_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = mode_gap(&Database::new(&SAMPLE).unwrap(), &Clause::parse("1010110").unwrap());
    for _ in 0..50 {
        let count = rng.gen_range(2..=16);
        let width = rng.gen_range(2..=8);
        let db = random_database(&mut rng, count, width);
        // constrain a random non-empty subset of bits of a random record
        let record = db.record(rng.gen_range(0..count));
        let mask = rng.gen_range(1..1u64 << width);
        worst = worst.max(mode_gap(&db, &Clause::new(record, mask, width)));
    }
    report(5, worst <= 1e-9, &format!("51 cases, max difference {worst:.2e}"));
}

#[test]
fn criterion_6_arithmetic_exhaustive() {
    let start = Instant::now();
    let reports = [
        (verify_adder(3).unwrap(), 64),
        (verify_subtractor(3).unwrap(), 64),
        (verify_modular_adder(7).unwrap(), 49),
        (verify_multiplier(7, &[1, 2, 3, 4, 5, 6]).unwrap(), 84),
        (verify_modexp(3, 7, 3).unwrap(), 8),
    ];
    let elapsed = start.elapsed();
    let ok = reports.iter().all(|(r, n)| r.ok() && r.cases == *n) && elapsed < Duration::from_secs(300);
    let detail: Vec<String> = reports
        .iter()
        .map(|(r, _)| format!("{} {}/{}", r.family, r.passed, r.cases))
        .collect();
    report(6, ok, &format!("{}, {elapsed:?}", detail.join(", ")));
}

#[test]
fn criterion_7_dh_attack() {
    let start = Instant::now();
    let params = DHParams::new(7, 3).unwrap();
    let mut ok = true;
    let mut worst_gap = 0.0f64;
    let mut max_qubits = 0;
    let mut lines = Vec::new();
    for secret in 1..=6 {
        let target = params.public_value(secret).unwrap();
        let candidates = generate_candidates(&params, target, 4, secret).unwrap();
        let circuit = run_attack(&params, target, &candidates, &AttackOptions::default()).unwrap();
        let opts = AttackOptions {
            mode: AttackMode::PrecomputedOracle,
            ..Default::default()
        };
        let pre = run_attack(&params, target, &candidates, &opts).unwrap();
        let gap = circuit
            .distribution
            .keys()
            .chain(pre.distribution.keys())
            .map(|k| (circuit.distribution.get(k).unwrap_or(&0.0) - pre.distribution.get(k).unwrap_or(&0.0)).abs())
            .fold(0.0, f64::max);
        worst_gap = worst_gap.max(gap);
        max_qubits = max_qubits.max(circuit.qubits);
        ok &= circuit.recovered == secret && (circuit.probability - 1.0).abs() <= 1e-6 && gap <= 1e-9;
        lines.push(format!("{secret}->{}", circuit.recovered));
    }
    let elapsed = start.elapsed();
    // the state vector dominates memory: 16 bytes per amplitude
    let bytes = 16u64 << max_qubits;
    ok &= max_qubits <= 26 && bytes <= 2 << 30 && elapsed < Duration::from_secs(600);
    report(
        7,
        ok,
        &format!(
            "recovered {}, {max_qubits} qubits ({} MiB), mode gap {worst_gap:.2e}, {elapsed:?}",
            lines.join(" "),
            bytes >> 20
        ),
    );
}

#[test]
fn criterion_8_gate_counts() {
    let sample = build_dictionary(&Database::new(&SAMPLE).unwrap()).unwrap();
    let mcx = sample.mcx_count();

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut bounded = true;
    let mut trend = Vec::new();
    for count in [8usize, 16, 32] {
        let dict = build_dictionary(&random_database(&mut rng, count, 16)).unwrap();
        let cubes = dict.cubes_per_column();
        bounded &= cubes.iter().all(|&c| c <= count);
        let mean = cubes.iter().sum::<usize>() as f64 / cubes.len() as f64;
        trend.push(format!(
            "|R|={count}: max {} mean {mean:.2}",
            cubes.iter().max().unwrap()
        ));
    }
    report(
        8,
        mcx == 13 && bounded,
        &format!(
            "example MCX count {mcx} (expected 13); cubes per column {}",
            trend.join(", ")
        ),
    );
}

fn gdict(args: &[&str], dir: &Path) -> (Vec<u8>, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_gdict"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap();
    (out.stdout, out.status.code().unwrap_or(-1))
}

#[test]
fn criterion_9_cli_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    std::fs::write(d.join("sample.db"), SAMPLE.join("\n") + "\n").unwrap();
    std::fs::write(d.join("bell.circ"), "H q0\nMCX [+q0] q1\n").unwrap();

    let runs: &[(&str, &[&str], &[&str])] = &[
        (
            "synth-dict",
            &["synth-dict", "sample.db", "--out", "dict.circ"],
            &["dict.circ", "dict.json"],
        ),
        (
            "grover-search",
            &["grover-search", "sample.db", "1010110", "--out", "search.json"],
            &["search.json"],
        ),
        (
            "verify-arith",
            &["verify-arith", "modadd", "--out", "verify.json"],
            &["verify.json"],
        ),
        (
            "dh-attack",
            &[
                "dh-attack",
                "--p",
                "31",
                "--g",
                "3",
                "--secret",
                "17",
                "--count",
                "8",
                "--mode",
                "precomputed",
                "--seed",
                "11",
                "--out",
                "attack.json",
            ],
            &["attack.json"],
        ),
        (
            "simulate",
            &[
                "simulate",
                "bell.circ",
                "--shots",
                "1000",
                "--seed",
                "3",
                "--out",
                "sim.json",
            ],
            &["sim.json"],
        ),
        (
            "gatecount",
            &["gatecount", "dict.circ", "--decompose", "--out", "count.json"],
            &["count.json"],
        ),
    ];
    let mut identical = Vec::new();
    let mut ok = true;
    for (name, args, files) in runs {
        let mut outputs = Vec::new();
        for _ in 0..2 {
            let (stdout, code) = gdict(args, d);
            ok &= code == 0;
            let mut bytes = stdout;
            for f in *files {
                bytes.extend(std::fs::read(d.join(f)).unwrap());
            }
            outputs.push(bytes);
        }
        let same = outputs[0] == outputs[1];
        ok &= same;
        identical.push(format!("{name}={}", if same { "same" } else { "differs" }));
    }
    report(9, ok, &identical.join(" "));
}
