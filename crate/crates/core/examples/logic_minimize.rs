// SPDX-License-Identifier: Apache-2.0

//! Two-level minimization of a few truth tables and the gates each cover
//! compiles to.
//!
//!     cargo run --example logic_minimize

use gdict::logic::{cover_to_gates, minimize, verify_cover, TruthTable};
use gdict::sim::{QubitIndex, Register};

fn show(name: &str, table: &TruthTable) -> gdict::Result<()> {
    let cover = minimize(table);
    let index = Register::contiguous("index", 0, table.num_inputs());
    let gates = cover_to_gates(&cover, &index, QubitIndex(table.num_inputs()))?;
    println!(
        "{name}: ones = {}, cubes = {}, verified = {}",
        table.ones(),
        cover.len(),
        verify_cover(&cover, table)
    );
    for (pattern, gate) in cover.patterns().iter().zip(&gates) {
        println!("  {pattern:<6} {gate}");
    }
    Ok(())
}

fn main() -> gdict::Result<()> {
    show("xor", &TruthTable::from_bits(&[0, 1, 1, 0])?)?;
    show("or", &TruthTable::from_bits(&[0, 1, 1, 1])?)?;
    show("majority", &TruthTable::from_bits(&[0, 0, 0, 1, 0, 1, 1, 1])?)?;

    // prime numbers below 16
    let primes: Vec<u8> = (0..16u32).map(|i| [2, 3, 5, 7, 11, 13].contains(&i) as u8).collect();
    show("prime4", &TruthTable::from_bits(&primes)?)?;

    // the same table with 12..16 left unspecified
    let outputs = primes.iter().map(|&b| b == 1).collect();
    let care = (0..16).map(|i| i < 12).collect();
    show("prime4 (12.. don't care)", &TruthTable::with_care(4, outputs, care)?)?;
    Ok(())
}
