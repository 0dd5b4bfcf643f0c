// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::gate::{Gate, GateKind, QubitIndex};
use crate::error::{Error, Result};

/// A named group of qubits read as an unsigned integer, `qubits[0]` being
/// the least significant bit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Register {
    pub name: String,
    pub qubits: Vec<QubitIndex>,
}

impl Register {
    pub fn new(name: impl Into<String>, qubits: Vec<QubitIndex>) -> Self {
        Register {
            name: name.into(),
            qubits,
        }
    }

    /// Register over the contiguous range `start..start + width`.
    pub fn contiguous(name: impl Into<String>, start: usize, width: usize) -> Self {
        Register::new(name, (start..start + width).map(QubitIndex).collect())
    }

    pub fn width(&self) -> usize {
        self.qubits.len()
    }

    pub fn qubit(&self, bit: usize) -> QubitIndex {
        self.qubits[bit]
    }

    /// Reads this register's value out of a basis-state index.
    pub fn extract(&self, basis: usize) -> u64 {
        self.qubits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (bit, q)| acc | ((((basis >> q.0) & 1) as u64) << bit))
    }

    /// Writes `value` into the register's bits of `basis`.
    pub fn deposit(&self, basis: usize, value: u64) -> usize {
        self.qubits.iter().enumerate().fold(basis, |acc, (bit, q)| {
            if (value >> bit) & 1 == 1 {
                acc | q.mask()
            } else {
                acc & !q.mask()
            }
        })
    }

    pub fn mask(&self) -> usize {
        self.qubits.iter().fold(0, |acc, q| acc | q.mask())
    }

    /// Concatenation of `self` (low bits) and `high`.
    pub fn extended(&self, name: impl Into<String>, high: &Register) -> Register {
        let mut qubits = self.qubits.clone();
        qubits.extend_from_slice(&high.qubits);
        Register::new(name, qubits)
    }
}

/// Hands out consecutive qubit indices and records the registers built from
/// them.
#[derive(Debug, Clone, Default)]
pub struct QubitAllocator {
    next: usize,
    registers: BTreeMap<String, Register>,
}

impl QubitAllocator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, name: &str, width: usize) -> Register {
        let reg = Register::contiguous(name, self.next, width);
        self.next += width;
        let previous = self.registers.insert(name.to_string(), reg.clone());
        assert!(previous.is_none(), "register {name} allocated twice");
        reg
    }

    pub fn qubit(&mut self, name: &str) -> QubitIndex {
        self.register(name, 1).qubit(0)
    }

    pub fn num_qubits(&self) -> usize {
        self.next
    }

    pub fn registers(&self) -> &BTreeMap<String, Register> {
        &self.registers
    }

    /// An empty circuit spanning every allocated qubit.
    pub fn circuit(&self) -> Circuit {
        Circuit {
            num_qubits: self.next,
            gates: Vec::new(),
            registers: self.registers.clone(),
        }
    }
}

/// Gate-kind histogram. Keys are the text-format gate names, plus
/// `CCX_EQUIV` when decomposition estimates are requested.
pub type GateCounts = BTreeMap<String, usize>;

pub const DECOMPOSED_KEY: &str = "CCX_EQUIV";

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Circuit {
    pub num_qubits: usize,
    pub gates: Vec<Gate>,
    pub registers: BTreeMap<String, Register>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            ..Default::default()
        }
    }

    pub fn with_gates(num_qubits: usize, gates: Vec<Gate>) -> Self {
        Circuit {
            num_qubits,
            gates,
            registers: BTreeMap::new(),
        }
    }

    pub fn push(&mut self, gate: Gate) {
        debug_assert!(gate.validate(self.num_qubits).is_ok(), "invalid gate {gate}");
        self.gates.push(gate);
    }

    pub fn extend(&mut self, gates: impl IntoIterator<Item = Gate>) {
        for g in gates {
            self.push(g);
        }
    }

    pub fn add_register(&mut self, register: Register) {
        self.registers.insert(register.name.clone(), register);
    }

    pub fn register(&self, name: &str) -> Option<&Register> {
        self.registers.get(name)
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Reversed gate list. All supported gate kinds are self-inverse.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: inverse_gates(&self.gates),
            registers: self.registers.clone(),
        }
    }

    /// Validates every gate and checks that registers are in range and
    /// pairwise disjoint.
    pub fn validate(&self) -> Result<()> {
        for g in &self.gates {
            g.validate(self.num_qubits)?;
        }
        let mut seen = 0usize;
        for reg in self.registers.values() {
            for q in &reg.qubits {
                if q.0 >= self.num_qubits {
                    return Err(Error::QubitOutOfRange {
                        qubit: q.0,
                        num_qubits: self.num_qubits,
                    });
                }
                if seen & q.mask() != 0 {
                    return Err(Error::OverlappingQubits(q.0));
                }
                seen |= q.mask();
            }
        }
        Ok(())
    }

    pub fn gate_counts(&self, decompose: bool) -> GateCounts {
        gate_counts(&self.gates, decompose)
    }
}

pub fn inverse_gates(gates: &[Gate]) -> Vec<Gate> {
    gates.iter().rev().cloned().collect()
}

/// Counts gates by kind. With `decompose`, every MCX/MCZ with `c` controls
/// also contributes `max(1, 2c - 3)` two-controlled gates under
/// [`DECOMPOSED_KEY`]. The estimate is reported only; simulation always
/// runs the native multi-controlled kernels.
pub fn gate_counts(gates: &[Gate], decompose: bool) -> GateCounts {
    let mut counts = GateCounts::new();
    let mut equiv = 0usize;
    for g in gates {
        *counts.entry(g.kind.name().to_string()).or_default() += 1;
        if decompose && matches!(g.kind, GateKind::Mcx | GateKind::Mcz) {
            let c = g.controls.len();
            equiv += (2 * c).saturating_sub(3).max(1);
        }
    }
    if decompose && equiv > 0 {
        counts.insert(DECOMPOSED_KEY.to_string(), equiv);
    }
    counts
}
