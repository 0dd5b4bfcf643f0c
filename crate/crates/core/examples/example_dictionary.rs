// SPDX-License-Identifier: Apache-2.0

//! Compiles the four-record example database into a dictionary operator and
//! loads every index.
//!
//!     cargo run --example example_dictionary

use gdict::dictionary::{build_dictionary, Database};
use gdict::sim::StateVector;

fn main() -> gdict::Result<()> {
    let db = Database::new(&["0101000", "1000110", "1010110", "0110101"])?;
    let dict = build_dictionary(&db)?;

    let symbols = ['a', 'b', 'c', 'd', 'e', 'f', 'g'];
    for (symbol, cover) in symbols.iter().zip(&dict.covers) {
        println!("{symbol}: {}", cover.patterns().join(" + "));
    }
    println!("\n{}", dict.circuit.to_text());
    println!("MCX gates: {}", dict.mcx_count());

    let data = dict.data_register();
    for i in 0..db.len() {
        let mut state = StateVector::<f64>::new(dict.circuit.num_qubits, i as u64)?;
        state.apply_circuit(&dict.circuit)?;
        let loaded = state.marginal_distribution(data)?;
        let (&value, p) = loaded.iter().next().expect("one outcome");
        println!("|{i:02b}⟩|0⟩ -> |{i:02b}⟩|{value:07b}⟩  p = {p}");
    }
    Ok(())
}
