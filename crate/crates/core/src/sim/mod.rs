// SPDX-License-Identifier: Apache-2.0

//! Dense state-vector simulation of reversible circuits.
//!
//! Basis-state integers are little-endian over qubits: bit `k` of the index
//! is the value of qubit `k`. Registers follow the same convention, so a
//! register's value reads directly as an integer.

mod circuit;
mod gate;
mod state;
pub mod text;

pub use circuit::{gate_counts, inverse_gates, Circuit, GateCounts, QubitAllocator, Register, DECOMPOSED_KEY};
pub use gate::{Control, Gate, GateKind, Polarity, QubitIndex};
pub use state::{Real, StateVector, DEFAULT_MAX_QUBITS, HARD_MAX_QUBITS};
