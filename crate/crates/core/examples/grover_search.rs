// SPDX-License-Identifier: Apache-2.0

//! Dictionary search on the example database, then a sweep comparing
//! simulated success with the analytic prediction.
//!
//!     cargo run --release --example grover_search

use gdict::dictionary::Database;
use gdict::grover::{run_search, success_probability, Clause, OracleMode, SearchOptions};

fn main() -> gdict::Result<()> {
    let db = Database::new(&["0101000", "1000110", "1010110", "0110101"])?;
    for pattern in ["1010110", "xxxxxx1", "01xxxxx"] {
        let clause = Clause::parse(pattern)?;
        for mode in [OracleMode::PhaseFlip, OracleMode::AncillaKickback] {
            let r = run_search(
                &db,
                &clause,
                &SearchOptions {
                    mode,
                    ..Default::default()
                },
            )?;
            println!(
                "{pattern} {mode:<16} R={} top={:02b} ({}) p={:.6} qubits={}",
                r.rounds, r.top_index, r.top_record, r.probability, r.qubits
            );
        }
    }

    println!("\n  N  M  R  simulated  predicted");
    for m in 2..=5usize {
        let n = 1u64 << m;
        let records: Vec<String> = (0..n).map(|i| format!("{:06b}", i * 7 % 64)).collect();
        let db = Database::new(&records)?;
        let clause = Clause::parse(&records[3])?;
        for rounds in 0..=4 {
            let r = run_search(
                &db,
                &clause,
                &SearchOptions {
                    rounds: Some(rounds),
                    ..Default::default()
                },
            )?;
            let predicted = success_probability(n, 1, rounds)?;
            println!("{n:3} {:2} {rounds:2}  {:.7}  {predicted:.7}", 1, r.winner_probability);
        }
    }
    Ok(())
}
