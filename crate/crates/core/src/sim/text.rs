// SPDX-License-Identifier: Apache-2.0

//! Line-oriented circuit text format.
//!
//! ```text
//! # comment
//! REG index q0,q1
//! H q3
//! X q0
//! Z q2
//! SWAP q1 q4
//! MCX [+q0,-q1,+q2] q5
//! MCZ [+q0,+q1,-q3]
//! ```
//!
//! The qubit count is not stored; a parsed circuit spans one past the highest
//! qubit mentioned by any gate or register.

use std::fmt::Write as _;

use super::circuit::{Circuit, Register};
use super::gate::{Control, Gate, GateKind, Polarity, QubitIndex};
use crate::error::{Error, Result};

pub fn to_text(circuit: &Circuit) -> String {
    let mut out = String::new();
    for reg in circuit.registers.values() {
        let qubits: Vec<String> = reg.qubits.iter().map(|q| q.to_string()).collect();
        let _ = writeln!(out, "REG {} {}", reg.name, qubits.join(","));
    }
    for g in &circuit.gates {
        let _ = writeln!(out, "{g}");
    }
    out
}

pub fn parse(text: &str) -> Result<Circuit> {
    let mut circuit = Circuit::default();
    let mut width = 0usize;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |message: String| Error::Parse { line: line_no, message };
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        if head == "REG" {
            let (name, list) = rest
                .split_once(char::is_whitespace)
                .ok_or_else(|| err("expected `REG name q0,q1,...`".into()))?;
            let qubits = list
                .trim()
                .split(',')
                .map(|t| parse_qubit(t.trim()).map_err(&err))
                .collect::<Result<Vec<_>>>()?;
            if circuit.registers.contains_key(name) {
                return Err(err(format!("register {name} declared twice")));
            }
            width = width.max(qubits.iter().map(|q| q.0 + 1).max().unwrap_or(0));
            circuit.add_register(Register::new(name, qubits));
            continue;
        }
        let gate = match head {
            "H" | "X" | "Z" => {
                let q = parse_qubit(rest).map_err(&err)?;
                match head {
                    "H" => Gate::h(q),
                    "X" => Gate::x(q),
                    _ => Gate::z(q),
                }
            }
            "SWAP" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 2 {
                    return Err(err("SWAP takes two qubits".into()));
                }
                Gate::swap(
                    parse_qubit(parts[0]).map_err(&err)?,
                    parse_qubit(parts[1]).map_err(&err)?,
                )
            }
            "MCX" | "MCZ" => {
                let open = rest.find('[').ok_or_else(|| err("missing control list".into()))?;
                let close = rest.find(']').ok_or_else(|| err("unterminated control list".into()))?;
                if open != 0 || close < open {
                    return Err(err("malformed control list".into()));
                }
                let controls = parse_controls(&rest[1..close]).map_err(&err)?;
                let tail = rest[close + 1..].trim();
                if head == "MCX" {
                    Gate::mcx(controls, parse_qubit(tail).map_err(&err)?)
                } else {
                    if !tail.is_empty() {
                        return Err(err("MCZ takes no target".into()));
                    }
                    Gate::mcz(controls)
                }
            }
            other => return Err(err(format!("unknown gate `{other}`"))),
        };
        let span = gate.max_qubit().map_or(0, |q| q + 1);
        gate.validate(span).map_err(|e| err(e.to_string()))?;
        width = width.max(span);
        circuit.gates.push(gate);
    }
    circuit.num_qubits = width;
    circuit.validate().map_err(|e| Error::Parse {
        line: 0,
        message: e.to_string(),
    })?;
    Ok(circuit)
}

fn parse_qubit(token: &str) -> std::result::Result<QubitIndex, String> {
    token
        .strip_prefix('q')
        .and_then(|n| n.parse::<usize>().ok())
        .map(QubitIndex)
        .ok_or_else(|| format!("expected a qubit like `q3`, found `{token}`"))
}

fn parse_controls(list: &str) -> std::result::Result<Vec<Control>, String> {
    if list.trim().is_empty() {
        return Ok(Vec::new());
    }
    list.split(',')
        .map(|t| {
            let t = t.trim();
            let polarity = match t.chars().next() {
                Some('+') => Polarity::Positive,
                Some('-') => Polarity::Negative,
                _ => return Err(format!("control `{t}` needs a + or - polarity")),
            };
            Ok(Control {
                qubit: parse_qubit(&t[1..])?,
                polarity,
            })
        })
        .collect()
}

impl Circuit {
    pub fn to_text(&self) -> String {
        to_text(self)
    }

    pub fn parse(text: &str) -> Result<Circuit> {
        parse(text)
    }

    pub fn from_file(path: &std::path::Path) -> Result<Circuit> {
        parse(&std::fs::read_to_string(path)?)
    }
}

impl GateKind {
    pub fn parse(name: &str) -> Option<GateKind> {
        Some(match name {
            "H" => GateKind::H,
            "X" => GateKind::X,
            "Z" => GateKind::Z,
            "SWAP" => GateKind::Swap,
            "MCX" => GateKind::Mcx,
            "MCZ" => GateKind::Mcz,
            _ => return None,
        })
    }
}
