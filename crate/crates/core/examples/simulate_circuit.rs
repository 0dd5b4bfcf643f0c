// SPDX-License-Identifier: Apache-2.0

//! Parses a circuit in text format, simulates it and samples the result.
//!
//!     cargo run --example simulate_circuit

use gdict::sim::{Circuit, StateVector};

const SAMPLE: &str = "\
# a GHZ state on q0..q2, then a marked pattern on q3..q4
REG ghz q0,q1,q2
REG tail q3,q4
H q0
MCX [+q0] q1
MCX [+q1] q2
X q3
MCX [+q3] q4
MCZ [+q0,+q4]
";

fn main() -> gdict::Result<()> {
    let circuit = Circuit::parse(SAMPLE)?;
    println!(
        "{} qubits, {} gates, counts {:?}",
        circuit.num_qubits,
        circuit.len(),
        circuit.gate_counts(true)
    );

    let mut state = StateVector::<f64>::new(circuit.num_qubits, 0)?;
    state.apply_circuit(&circuit)?;
    for (i, a) in state.amplitudes().iter().enumerate().filter(|(_, a)| a.norm() > 0.0) {
        println!("|{i:05b}⟩  {a:.4}");
    }
    let ghz = circuit.register("ghz").expect("declared above");
    println!("ghz marginal {:?}", state.marginal_distribution(ghz)?);
    println!("1000 shots   {:?}", state.sample(ghz, 1000, 7)?);
    Ok(())
}
