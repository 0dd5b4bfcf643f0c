// SPDX-License-Identifier: Apache-2.0

//! A toy Diffie-Hellman exchange modulo 7 and recovery of one party's
//! secret from a list of candidate exponents.
//!
//!     cargo run --release --example dh_attack

use gdict::dh::{generate_candidates, run_attack, AttackMode, AttackOptions, DHParams};

fn main() -> gdict::Result<()> {
    let params = DHParams::demo();
    let (alice, bob) = (4, 5);
    let (a, b) = (params.public_value(alice)?, params.public_value(bob)?);
    println!(
        "p={} g={}  A={a} B={b}  shared={}",
        params.p,
        params.g,
        params.shared_secret(alice, b)?
    );

    let candidates = generate_candidates(&params, a, 4, 0)?;
    println!("candidates {:?}", candidates.candidates);
    for mode in [AttackMode::PrecomputedOracle, AttackMode::CircuitOracle] {
        let r = run_attack(
            &params,
            a,
            &candidates,
            &AttackOptions {
                mode,
                ..Default::default()
            },
        )?;
        println!(
            "{mode:<18} qubits={:2} rounds={} recovered={} p={:.9} verified={}",
            r.qubits, r.rounds, r.recovered, r.probability, r.verified
        );
    }

    // larger candidate lists need the precomputed oracle
    let big = DHParams::new(31, 3)?;
    let target = big.public_value(17)?;
    let candidates = generate_candidates(&big, target, 16, 0)?;
    let opts = AttackOptions {
        mode: AttackMode::PrecomputedOracle,
        ..Default::default()
    };
    let r = run_attack(&big, target, &candidates, &opts)?;
    println!(
        "p=31, 16 candidates: rounds={} recovered={} p={:.6}",
        r.rounds, r.recovered, r.probability
    );
    Ok(())
}
