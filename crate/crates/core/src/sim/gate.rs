// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Position of a qubit in a state vector. Bit `k` of a basis-state integer
/// belongs to `QubitIndex(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct QubitIndex(pub usize);

impl QubitIndex {
    #[inline]
    pub fn mask(self) -> usize {
        1usize << self.0
    }
}

impl From<usize> for QubitIndex {
    fn from(q: usize) -> Self {
        QubitIndex(q)
    }
}

impl fmt::Display for QubitIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Polarity {
    /// Fires when the control qubit is 1.
    Positive,
    /// Fires when the control qubit is 0 (open circle).
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Control {
    pub qubit: QubitIndex,
    pub polarity: Polarity,
}

impl Control {
    pub fn pos(q: impl Into<QubitIndex>) -> Self {
        Control {
            qubit: q.into(),
            polarity: Polarity::Positive,
        }
    }

    pub fn neg(q: impl Into<QubitIndex>) -> Self {
        Control {
            qubit: q.into(),
            polarity: Polarity::Negative,
        }
    }

    /// Positive when `bit` is set, negative otherwise.
    pub fn matching(q: impl Into<QubitIndex>, bit: bool) -> Self {
        if bit {
            Self::pos(q)
        } else {
            Self::neg(q)
        }
    }
}

impl fmt::Display for Control {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.polarity {
            Polarity::Positive => '+',
            Polarity::Negative => '-',
        };
        write!(f, "{sign}{}", self.qubit)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum GateKind {
    H,
    X,
    Z,
    Swap,
    Mcx,
    Mcz,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "H",
            GateKind::X => "X",
            GateKind::Z => "Z",
            GateKind::Swap => "SWAP",
            GateKind::Mcx => "MCX",
            GateKind::Mcz => "MCZ",
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A reversible gate. Every kind supported here is its own inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub controls: Vec<Control>,
    pub targets: Vec<QubitIndex>,
}

impl Gate {
    pub fn h(q: impl Into<QubitIndex>) -> Self {
        Gate {
            kind: GateKind::H,
            controls: Vec::new(),
            targets: vec![q.into()],
        }
    }

    pub fn x(q: impl Into<QubitIndex>) -> Self {
        Gate {
            kind: GateKind::X,
            controls: Vec::new(),
            targets: vec![q.into()],
        }
    }

    pub fn z(q: impl Into<QubitIndex>) -> Self {
        Gate {
            kind: GateKind::Z,
            controls: Vec::new(),
            targets: vec![q.into()],
        }
    }

    pub fn swap(a: impl Into<QubitIndex>, b: impl Into<QubitIndex>) -> Self {
        Gate {
            kind: GateKind::Swap,
            controls: Vec::new(),
            targets: vec![a.into(), b.into()],
        }
    }

    pub fn mcx(controls: Vec<Control>, target: impl Into<QubitIndex>) -> Self {
        Gate {
            kind: GateKind::Mcx,
            controls,
            targets: vec![target.into()],
        }
    }

    pub fn mcz(controls: Vec<Control>) -> Self {
        Gate {
            kind: GateKind::Mcz,
            controls,
            targets: Vec::new(),
        }
    }

    /// CNOT with a single positive control.
    pub fn cx(control: impl Into<QubitIndex>, target: impl Into<QubitIndex>) -> Self {
        Self::mcx(vec![Control::pos(control)], target)
    }

    /// Toffoli with two positive controls.
    pub fn ccx(c0: impl Into<QubitIndex>, c1: impl Into<QubitIndex>, target: impl Into<QubitIndex>) -> Self {
        Self::mcx(vec![Control::pos(c0), Control::pos(c1)], target)
    }

    /// Every qubit the gate touches, controls first.
    pub fn qubits(&self) -> impl Iterator<Item = QubitIndex> + '_ {
        self.controls
            .iter()
            .map(|c| c.qubit)
            .chain(self.targets.iter().copied())
    }

    /// Checks arity, disjointness and qubit range against a state of
    /// `num_qubits` qubits.
    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        let malformed = |reason| {
            Err(Error::MalformedGate {
                kind: self.kind,
                reason,
            })
        };
        match self.kind {
            GateKind::H | GateKind::X | GateKind::Z => {
                if self.targets.len() != 1 {
                    return malformed("expected exactly one target");
                }
                if !self.controls.is_empty() {
                    return malformed("single-qubit gates take no controls");
                }
            }
            GateKind::Swap => {
                if self.targets.len() != 2 {
                    return malformed("expected exactly two targets");
                }
                if !self.controls.is_empty() {
                    return malformed("SWAP takes no controls");
                }
            }
            GateKind::Mcx => {
                if self.targets.len() != 1 {
                    return malformed("expected exactly one target");
                }
            }
            GateKind::Mcz => {
                if !self.targets.is_empty() {
                    return malformed("MCZ has no distinguished target");
                }
                if self.controls.is_empty() {
                    return malformed("MCZ needs at least one qubit");
                }
            }
        }
        let mut seen = 0usize;
        for q in self.qubits() {
            if q.0 >= num_qubits {
                return Err(Error::QubitOutOfRange { qubit: q.0, num_qubits });
            }
            if seen & q.mask() != 0 {
                return Err(Error::OverlappingQubits(q.0));
            }
            seen |= q.mask();
        }
        Ok(())
    }

    /// Largest qubit index referenced, if any.
    pub fn max_qubit(&self) -> Option<usize> {
        self.qubits().map(|q| q.0).max()
    }

    /// `(mask, value)` pair: the gate fires on basis index `i` when
    /// `i & mask == value`.
    pub(crate) fn control_pattern(&self) -> (usize, usize) {
        let mut mask = 0;
        let mut value = 0;
        for c in &self.controls {
            mask |= c.qubit.mask();
            if c.polarity == Polarity::Positive {
                value |= c.qubit.mask();
            }
        }
        (mask, value)
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GateKind::H | GateKind::X | GateKind::Z => {
                write!(f, "{} {}", self.kind, self.targets[0])
            }
            GateKind::Swap => write!(f, "SWAP {} {}", self.targets[0], self.targets[1]),
            GateKind::Mcx | GateKind::Mcz => {
                write!(f, "{} [", self.kind)?;
                for (i, c) in self.controls.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str("]")?;
                if self.kind == GateKind::Mcx {
                    write!(f, " {}", self.targets[0])?;
                }
                Ok(())
            }
        }
    }
}
