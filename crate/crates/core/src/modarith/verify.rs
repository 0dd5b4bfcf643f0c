// SPDX-License-Identifier: Apache-2.0

//! Exhaustive comparison of the arithmetic circuits against integer
//! arithmetic. Every case prepares a basis state, simulates the full
//! circuit and requires the complete expected output basis state (operands,
//! result and restored workspaces) with probability 1.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{adder_circuit, modexp_circuit, modular_adder_circuit, modulus_width, multiplier_circuit};
use crate::error::{Error, Result};
use crate::numtheory::mod_pow;
use crate::sim::{Circuit, StateVector};

pub const TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Adder,
    Subtractor,
    Modadd,
    Modmul,
    Modexp,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Adder => "adder",
            Family::Subtractor => "subtractor",
            Family::Modadd => "modadd",
            Family::Modmul => "modmul",
            Family::Modexp => "modexp",
        })
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "adder" => Family::Adder,
            "subtractor" | "sub" => Family::Subtractor,
            "modadd" => Family::Modadd,
            "modmul" => Family::Modmul,
            "modexp" => Family::Modexp,
            other => return Err(Error::InvalidParams(format!("unknown arithmetic family `{other}`"))),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseFailure {
    pub case: String,
    pub expected: u64,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub family: Family,
    pub params: String,
    pub qubits: usize,
    pub gates: usize,
    pub cases: usize,
    pub passed: usize,
    pub failures: Vec<CaseFailure>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.passed == self.cases
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: {}/{} {}",
            self.family,
            self.params,
            self.passed,
            self.cases,
            if self.ok() { "pass" } else { "FAIL" }
        )
    }
}

struct Case {
    label: String,
    input: usize,
    expected: usize,
}

struct Accumulator {
    report: VerifyReport,
}

impl Accumulator {
    fn new(family: Family, params: String, circuit: &Circuit) -> Self {
        Accumulator {
            report: VerifyReport {
                family,
                params,
                qubits: circuit.num_qubits,
                gates: circuit.len(),
                cases: 0,
                passed: 0,
                failures: Vec::new(),
            },
        }
    }

    fn run(&mut self, circuit: &Circuit, case: Case) -> Result<()> {
        let mut state = StateVector::<f64>::new(circuit.num_qubits, case.input as u64)?;
        state.apply_circuit(circuit)?;
        let p = state.probability(case.expected);
        self.report.cases += 1;
        if (p - 1.0).abs() <= TOLERANCE {
            self.report.passed += 1;
        } else {
            self.report.failures.push(CaseFailure {
                case: case.label,
                expected: case.expected as u64,
                probability: p,
            });
        }
        Ok(())
    }
}

/// All `a, b < 2^n`.
pub fn verify_adder(n: usize) -> Result<VerifyReport> {
    let built = adder_circuit(n)?;
    let l = &built.layout;
    let mut acc = Accumulator::new(Family::Adder, format!("n={n}"), &built.circuit);
    for a in 0..1u64 << n {
        for b in 0..1u64 << n {
            let input = l.y.deposit(l.x.deposit(0, a), b);
            let expected = l.y.deposit(input, a + b);
            acc.run(
                &built.circuit,
                Case {
                    label: format!("{a}+{b}"),
                    input,
                    expected,
                },
            )?;
        }
    }
    Ok(acc.report)
}

/// The inverse adder on `|a⟩|a + b⟩` for all `a, b < 2^n`.
pub fn verify_subtractor(n: usize) -> Result<VerifyReport> {
    let built = adder_circuit(n)?;
    let inverse = built.circuit.inverse();
    let l = &built.layout;
    let mut acc = Accumulator::new(Family::Subtractor, format!("n={n}"), &inverse);
    for a in 0..1u64 << n {
        for b in 0..1u64 << n {
            let input = l.y.deposit(l.x.deposit(0, a), a + b);
            let expected = l.y.deposit(input, b);
            acc.run(
                &inverse,
                Case {
                    label: format!("{}-{a}", a + b),
                    input,
                    expected,
                },
            )?;
        }
    }
    Ok(acc.report)
}

/// All residue pairs `a, b < N`.
pub fn verify_modular_adder(modulus: u64) -> Result<VerifyReport> {
    let built = modular_adder_circuit(modulus)?;
    let l = &built.layout;
    let mut acc = Accumulator::new(Family::Modadd, format!("N={modulus}"), &built.circuit);
    for a in 0..modulus {
        for b in 0..modulus {
            let input = l.m.deposit(l.adder.y.deposit(l.adder.x.deposit(0, a), b), modulus);
            let expected = l.adder.y.deposit(input, (a + b) % modulus);
            acc.run(
                &built.circuit,
                Case {
                    label: format!("{a}+{b}"),
                    input,
                    expected,
                },
            )?;
        }
    }
    Ok(acc.report)
}

/// Every multiplier in `multipliers`, every `x < N` and both control
/// values. An empty list means all of `1..N`.
pub fn verify_multiplier(modulus: u64, multipliers: &[u64]) -> Result<VerifyReport> {
    modulus_width(modulus)?;
    let all: Vec<u64> = if multipliers.is_empty() {
        (1..modulus).collect()
    } else {
        multipliers.to_vec()
    };
    let mut acc: Option<Accumulator> = None;
    let mut qubits = 0;
    let mut gates = 0;
    for &a in &all {
        let built = multiplier_circuit(a, modulus)?;
        qubits = built.circuit.num_qubits;
        gates += built.circuit.len();
        let acc = acc
            .get_or_insert_with(|| Accumulator::new(Family::Modmul, format!("N={modulus} a={all:?}"), &built.circuit));
        let l = &built.layout;
        for ctrl in 0..2usize {
            for x in 0..modulus {
                let input = l.inner.m.deposit(l.input.deposit(ctrl << l.ctrl.0, x), modulus);
                let product = if ctrl == 1 { a * x % modulus } else { x };
                let expected = l.output().deposit(input, product);
                acc.run(
                    &built.circuit,
                    Case {
                        label: format!("ctrl={ctrl} {a}*{x}"),
                        input,
                        expected,
                    },
                )?;
            }
        }
    }
    let mut report = acc.expect("at least one multiplier").report;
    report.qubits = qubits;
    report.gates = gates;
    Ok(report)
}

/// Every exponent `x < 2^exponent_bits`.
pub fn verify_modexp(g: u64, modulus: u64, exponent_bits: usize) -> Result<VerifyReport> {
    let built = modexp_circuit(g, modulus, exponent_bits)?;
    let l = &built.layout;
    let mut acc = Accumulator::new(Family::Modexp, format!("g={g} N={modulus}"), &built.circuit);
    for x in 0..1u64 << exponent_bits {
        let input = l.initial_basis(x, modulus);
        let expected = l.output().deposit(input, mod_pow(g, x, modulus));
        acc.run(
            &built.circuit,
            Case {
                label: format!("{g}^{x}"),
                input,
                expected,
            },
        )?;
    }
    Ok(acc.report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_families_pass_exhaustively() {
        let r = verify_adder(2).unwrap();
        assert_eq!((r.cases, r.passed), (16, 16));
        let r = verify_subtractor(2).unwrap();
        assert!(r.ok());
        let r = verify_modular_adder(3).unwrap();
        assert_eq!((r.cases, r.passed), (9, 9));
        let r = verify_multiplier(3, &[]).unwrap();
        assert_eq!((r.cases, r.passed), (12, 12));
        let r = verify_modexp(2, 3, 2).unwrap();
        assert_eq!((r.cases, r.passed), (4, 4));
        assert_eq!(r.to_string(), "modexp g=2 N=3: 4/4 pass");
    }

    #[test]
    fn family_names() {
        assert_eq!("modadd".parse::<Family>().unwrap(), Family::Modadd);
        assert!("modsub".parse::<Family>().is_err());
    }
}
