// SPDX-License-Identifier: Apache-2.0

//! Grover search: round planning, phase oracles, the diffuser and the
//! integrated dictionary search.
//!
//! One iteration of the dictionary search is
//! `ℛ · oracle(data) · ℛ⁻¹ · diffuser(index)`. The dictionary writes each
//! record beside its index, the oracle marks matching records, and the
//! inverse dictionary clears the data register again so the diffuser only
//! ever sees the index register.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dictionary::{build_dictionary_with, Database, Padding};
use crate::error::{Error, Result};
use crate::sim::{gate_counts, Control, Gate, GateCounts, QubitIndex, Real, Register, StateVector, DEFAULT_MAX_QUBITS};

/// Tolerance for "this register is back to its initial value".
pub const RESTORE_TOLERANCE: f64 = 1e-9;

/// Restoration tolerance at precision `T`: [`RESTORE_TOLERANCE`] for
/// doubles, loosened to track rounding at single precision.
pub fn restore_tolerance<T: Real>() -> f64 {
    RESTORE_TOLERANCE.max(1e3 * Real::to_f64(T::epsilon()))
}

/// Mask-match predicate over `width`-bit records: a record `r` matches iff
/// `r & mask == value & mask`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Clause {
    pub value: u64,
    pub mask: u64,
    pub width: usize,
}

impl Clause {
    pub fn new(value: u64, mask: u64, width: usize) -> Self {
        Clause {
            value: value & mask,
            mask,
            width,
        }
    }

    pub fn exact(value: u64, width: usize) -> Self {
        Clause::new(value, (1u64 << width) - 1, width)
    }

    /// Parses a pattern over `{0,1,x}`, leftmost character = most
    /// significant record bit.
    pub fn parse(pattern: &str) -> Result<Self> {
        let width = pattern.chars().count();
        if width == 0 || width > 63 {
            return Err(Error::InvalidParams(format!(
                "clause `{pattern}` has unsupported length"
            )));
        }
        let mut value = 0u64;
        let mut mask = 0u64;
        for ch in pattern.chars() {
            value <<= 1;
            mask <<= 1;
            match ch {
                '0' => mask |= 1,
                '1' => {
                    mask |= 1;
                    value |= 1;
                }
                'x' | 'X' => {}
                other => {
                    return Err(Error::InvalidParams(format!(
                        "unexpected character `{other}` in clause `{pattern}`"
                    )))
                }
            }
        }
        Ok(Clause { value, mask, width })
    }

    pub fn matches(&self, record: u64) -> bool {
        record & self.mask == self.value
    }

    pub fn pattern(&self) -> String {
        (0..self.width)
            .rev()
            .map(|b| match (self.mask >> b & 1, self.value >> b & 1) {
                (0, _) => 'x',
                (_, 1) => '1',
                _ => '0',
            })
            .collect()
    }

    pub fn check_width(&self, width: usize) -> Result<()> {
        if self.width != width {
            return Err(Error::ClauseLength {
                expected: width,
                found: self.width,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pattern())
    }
}

impl FromStr for Clause {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Clause::parse(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OracleMode {
    /// A single multi-controlled Z.
    #[default]
    PhaseFlip,
    /// A multi-controlled X onto an ancilla held in `|−⟩`.
    AncillaKickback,
}

impl fmt::Display for OracleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OracleMode::PhaseFlip => "phase_flip",
            OracleMode::AncillaKickback => "ancilla_kickback",
        })
    }
}

impl FromStr for OracleMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phase_flip" | "phase-flip" => Ok(OracleMode::PhaseFlip),
            "ancilla_kickback" | "ancilla-kickback" | "kickback" => Ok(OracleMode::AncillaKickback),
            other => Err(Error::InvalidParams(format!("unknown oracle mode `{other}`"))),
        }
    }
}

/// Where a phase oracle deposits its sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleTarget {
    PhaseFlip,
    /// Ancilla expected to be in `|−⟩`.
    Kickback(QubitIndex),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroverPlan {
    pub search_space_size: u64,
    pub winner_count: u64,
    pub theta0: f64,
    pub rounds: usize,
    pub predicted_success: f64,
}

fn theta0(n: u64, m: u64) -> Result<f64> {
    if m == 0 || m > n {
        return Err(Error::Domain(format!("winner count {m} must be in 1..={n}")));
    }
    Ok((m as f64 / n as f64).sqrt().asin())
}

/// Nearest integer `R` with `(2R + 1)·θ₀ ≈ π/2`.
pub fn optimal_rounds(n: u64, m: u64) -> Result<GroverPlan> {
    let theta0 = theta0(n, m)?;
    let rounds = ((PI / (2.0 * theta0) - 1.0) / 2.0).round().max(0.0) as usize;
    Ok(GroverPlan {
        search_space_size: n,
        winner_count: m,
        theta0,
        rounds,
        predicted_success: success_probability(n, m, rounds)?,
    })
}

/// `sin²((2R + 1)·θ₀)`.
pub fn success_probability(n: u64, m: u64, rounds: usize) -> Result<f64> {
    let theta0 = theta0(n, m)?;
    Ok(((2 * rounds + 1) as f64 * theta0).sin().powi(2))
}

pub fn hadamard_transform(register: &Register) -> Vec<Gate> {
    register.qubits.iter().map(|&q| Gate::h(q)).collect()
}

/// Negates the amplitude of every basis state whose `data` value matches
/// the clause.
pub fn phase_oracle(clause: &Clause, data: &Register, target: OracleTarget) -> Result<Vec<Gate>> {
    if clause.mask == 0 {
        return Err(Error::EmptyMask);
    }
    clause.check_width(data.width())?;
    let controls: Vec<Control> = (0..data.width())
        .rev()
        .filter(|b| clause.mask >> b & 1 == 1)
        .map(|b| Control::matching(data.qubit(b), clause.value >> b & 1 == 1))
        .collect();
    Ok(vec![match target {
        OracleTarget::PhaseFlip => Gate::mcz(controls),
        OracleTarget::Kickback(ancilla) => Gate::mcx(controls, ancilla),
    }])
}

/// Reflection about the uniform superposition, realized as
/// `H^m · MCZ(all negative) · H^m`. The middle gate negates `|0…0⟩` only, so
/// the product is `-(2|S⟩⟨S| - I)`; the global sign is unobservable.
pub fn diffuser(register: &Register) -> Vec<Gate> {
    let mut gates = hadamard_transform(register);
    gates.push(Gate::mcz(register.qubits.iter().map(|&q| Control::neg(q)).collect()));
    gates.extend(hadamard_transform(register));
    gates
}

/// A search laid out as one-time preparation followed by a repeated
/// iteration block.
#[derive(Debug, Clone)]
pub struct SearchProgram {
    pub num_qubits: usize,
    pub registers: BTreeMap<String, Register>,
    pub prep: Vec<Gate>,
    pub iteration: Vec<Gate>,
}

impl SearchProgram {
    pub fn register(&self, name: &str) -> &Register {
        &self.registers[name]
    }

    /// Gate counts of the full program for `rounds` iterations.
    pub fn gate_counts(&self, rounds: usize, decompose: bool) -> GateCounts {
        let mut counts = gate_counts(&self.prep, decompose);
        for (k, v) in gate_counts(&self.iteration, decompose) {
            *counts.entry(k).or_default() += v * rounds;
        }
        counts
    }

    /// Prepares the initial state and runs `rounds` iterations, calling
    /// `check` after each one.
    pub fn simulate<T: Real>(
        &self,
        initial: u64,
        rounds: usize,
        max_qubits: usize,
        mut check: impl FnMut(usize, &StateVector<T>) -> Result<()>,
    ) -> Result<StateVector<T>> {
        let mut state = StateVector::<T>::with_limit(self.num_qubits, initial, max_qubits)?;
        state.apply_gates(&self.prep)?;
        for round in 0..rounds {
            state.apply_gates(&self.iteration)?;
            check(round, &state)?;
        }
        Ok(state)
    }
}

/// Builds the dictionary search. Registers: `index` (qubits `0..m`), `data`
/// (next `n`), and `ancilla` in kickback mode.
pub fn search_program(
    database: &Database,
    clause: &Clause,
    mode: OracleMode,
    padding: Padding,
) -> Result<(SearchProgram, Database)> {
    clause.check_width(database.width())?;
    let dict = build_dictionary_with(database, padding)?;
    let index = dict.index_register().clone();
    let data = dict.data_register().clone();
    let mut registers = dict.circuit.registers.clone();
    let mut num_qubits = dict.circuit.num_qubits;
    let mut prep = hadamard_transform(&index);
    let target = match mode {
        OracleMode::PhaseFlip => OracleTarget::PhaseFlip,
        OracleMode::AncillaKickback => {
            let a = QubitIndex(num_qubits);
            num_qubits += 1;
            registers.insert("ancilla".into(), Register::new("ancilla", vec![a]));
            prep.extend([Gate::x(a), Gate::h(a)]);
            OracleTarget::Kickback(a)
        }
    };
    let mut iteration = dict.circuit.gates.clone();
    // An all-wildcard clause is only legal with zero rounds; the oracle is
    // built lazily so that case still yields a program.
    if clause.mask != 0 {
        iteration.extend(phase_oracle(clause, &data, target)?);
    }
    iteration.extend(dict.inverse().gates);
    iteration.extend(diffuser(&index));
    Ok((
        SearchProgram {
            num_qubits,
            registers,
            prep,
            iteration,
        },
        dict.database,
    ))
}

#[derive(Debug, Clone)]
pub struct SearchOptions {
    /// Overrides the planned round count.
    pub rounds: Option<usize>,
    /// Overrides the classically counted winner total used for planning.
    pub winners: Option<u64>,
    pub mode: OracleMode,
    pub padding: Padding,
    pub max_qubits: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            rounds: None,
            winners: None,
            mode: OracleMode::PhaseFlip,
            padding: Padding::Duplicate,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchResult {
    pub clause: String,
    pub mode: OracleMode,
    pub plan: GroverPlan,
    pub rounds: usize,
    /// Padded indices whose record satisfies the clause.
    pub winners: Vec<u64>,
    /// Index-register marginal.
    pub distribution: BTreeMap<u64, f64>,
    pub top_index: u64,
    pub top_record: String,
    pub probability: f64,
    /// Total probability on winning indices.
    pub winner_probability: f64,
    pub qubits: usize,
    pub gates: GateCounts,
    pub gates_per_iteration: GateCounts,
}

pub fn run_search(database: &Database, clause: &Clause, options: &SearchOptions) -> Result<SearchResult> {
    run_search_with::<f64>(database, clause, options)
}

pub fn run_search_with<T: Real>(database: &Database, clause: &Clause, options: &SearchOptions) -> Result<SearchResult> {
    clause.check_width(database.width())?;
    let (program, loaded) = search_program(database, clause, options.mode, options.padding)?;
    let winners: Vec<u64> = loaded
        .matching(|r| clause.matches(r))
        .into_iter()
        .map(|i| i as u64)
        .collect();
    if winners.is_empty() {
        return Err(Error::NoWinner);
    }
    let n = loaded.len() as u64;
    let plan = optimal_rounds(n, options.winners.unwrap_or(winners.len() as u64))?;
    let rounds = options.rounds.unwrap_or(plan.rounds);
    if rounds > 0 && clause.mask == 0 {
        return Err(Error::EmptyMask);
    }

    let data = program.register("data").clone();
    let state = program.simulate::<T>(0, rounds, options.max_qubits, |round, s| {
        let residue = 1.0 - s.register_probability(&data, 0)?;
        if residue > restore_tolerance::<T>() {
            return Err(Error::Invariant(format!(
                "data register not cleared after iteration {round} (residue {residue:e})"
            )));
        }
        Ok(())
    })?;

    let distribution = state.marginal_distribution(program.register("index"))?;
    let (top_index, probability) = argmax(&distribution);
    let winner_probability = winners
        .iter()
        .map(|w| distribution.get(w).copied().unwrap_or(0.0))
        .sum();
    Ok(SearchResult {
        clause: clause.pattern(),
        mode: options.mode,
        plan,
        rounds,
        winners,
        top_record: loaded.record_string(top_index as usize),
        distribution,
        top_index,
        probability,
        winner_probability,
        qubits: program.num_qubits,
        gates: program.gate_counts(rounds, false),
        gates_per_iteration: gate_counts(&program.iteration, false),
    })
}

/// Most probable key; ties go to the smallest key.
pub fn argmax(distribution: &BTreeMap<u64, f64>) -> (u64, f64) {
    distribution.iter().fold(
        (0, f64::NEG_INFINITY),
        |best, (&k, &p)| if p > best.1 { (k, p) } else { best },
    )
}
