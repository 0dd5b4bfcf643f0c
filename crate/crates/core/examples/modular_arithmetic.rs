// SPDX-License-Identifier: Apache-2.0

//! Builds the reversible arithmetic circuits and checks each one
//! exhaustively against integer arithmetic.
//!
//!     cargo run --release --example modular_arithmetic

use gdict::modarith::verify::{
    verify_adder, verify_modexp, verify_modular_adder, verify_multiplier, verify_subtractor,
};
use gdict::modarith::{adder_circuit, modexp_circuit, modular_adder_circuit, multiplier_circuit};

fn main() -> gdict::Result<()> {
    println!("adder n=3: {} gates", adder_circuit(3)?.circuit.len());
    println!("modular adder N=7: {} gates", modular_adder_circuit(7)?.circuit.len());
    println!("multiplier a=3 N=7: {} gates", multiplier_circuit(3, 7)?.circuit.len());
    let modexp = modexp_circuit(3, 7, 3)?;
    println!(
        "modexp g=3 N=7: {} gates on {} qubits",
        modexp.circuit.len(),
        modexp.circuit.num_qubits
    );
    println!();

    for report in [
        verify_adder(3)?,
        verify_subtractor(3)?,
        verify_modular_adder(7)?,
        verify_multiplier(7, &[])?,
        verify_modexp(3, 7, 3)?,
    ] {
        println!("{report}");
    }
    Ok(())
}
