// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

use crate::sim::GateKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{requested} qubits exceeds the capacity limit of {limit}")]
    Capacity { requested: usize, limit: usize },

    #[error("basis value {value} out of range for {num_qubits} qubits")]
    BasisOutOfRange { value: u64, num_qubits: usize },

    #[error("qubit q{qubit} out of range for a {num_qubits}-qubit state")]
    QubitOutOfRange { qubit: usize, num_qubits: usize },

    #[error("qubit q{0} appears more than once in a gate")]
    OverlappingQubits(usize),

    #[error("malformed {kind} gate: {reason}")]
    MalformedGate { kind: GateKind, reason: &'static str },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("column {column} out of range for {width}-bit records")]
    ColumnOutOfRange { column: usize, width: usize },

    #[error("cover cubes {0} and {1} overlap")]
    NotDisjoint(String, String),

    #[error("clause mask is empty")]
    EmptyMask,

    #[error("no record satisfies the clause")]
    NoWinner,

    #[error("clause has {found} bits but records have {expected}")]
    ClauseLength { expected: usize, found: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("modulus {0} is not of the form 2^k - 1 (k >= 2)")]
    UnsupportedModulus(u64),

    #[error("{value} has no inverse modulo {modulus}")]
    NotInvertible { value: u64, modulus: u64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("simulation invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
