// SPDX-License-Identifier: Apache-2.0

//! Toy Diffie-Hellman key recovery.
//!
//! A candidate list of exponents (a stand-in for the output of classical
//! preprocessing) is loaded by a dictionary operator into the exponent
//! register of a modular exponentiation circuit. The phase oracle marks the
//! candidates whose public value `g^x mod p` equals the intercepted one,
//! and Grover iterations on the candidate index amplify them.
//!
//! Two oracle constructions are available. `CircuitOracle` computes
//! `g^x mod p` reversibly, marks the output register and uncomputes.
//! `PrecomputedOracle` marks the matching exponents directly, which needs
//! far fewer qubits and so scales to larger candidate lists.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dictionary::{dictionary_gates, Database, Padding};
use crate::error::{Error, Result};
use crate::grover::{
    argmax, diffuser, hadamard_transform, optimal_rounds, phase_oracle, restore_tolerance, Clause, GroverPlan,
    OracleMode, OracleTarget, SearchProgram,
};
use crate::modarith::{modexp, modulus_width, ModExpLayout};
use crate::numtheory::{bits_for, is_prime, mersenne_exponent, mod_pow, multiplicative_order};
use crate::sim::{inverse_gates, GateCounts, QubitAllocator, Real, Register, DEFAULT_MAX_QUBITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DHParams {
    pub p: u64,
    pub g: u64,
}

impl DHParams {
    /// Requires `p` prime of the form `2^k - 1` and `g` a primitive root
    /// modulo `p`.
    pub fn new(p: u64, g: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParams(format!("p = {p} is not prime")));
        }
        if mersenne_exponent(p).is_none() {
            return Err(Error::InvalidParams(format!("p = {p} is not of the form 2^k - 1")));
        }
        if multiplicative_order(g, p) != Some(p - 1) {
            return Err(Error::InvalidParams(format!(
                "g = {g} is not a primitive root modulo {p}"
            )));
        }
        Ok(DHParams { p, g })
    }

    /// The canonical small instance, `p = 7`, `g = 3`.
    pub fn demo() -> Self {
        DHParams { p: 7, g: 3 }
    }

    /// Width of the exponent register.
    pub fn exponent_bits(&self) -> usize {
        bits_for(self.p)
    }

    pub fn public_value(&self, secret: u64) -> Result<u64> {
        self.check_range("secret", secret)?;
        Ok(mod_pow(self.g, secret, self.p))
    }

    pub fn shared_secret(&self, own_secret: u64, other_public: u64) -> Result<u64> {
        self.check_range("secret", own_secret)?;
        self.check_range("public value", other_public)?;
        Ok(mod_pow(other_public, own_secret, self.p))
    }

    /// Exponent in `1..p` whose public value is `target`.
    pub fn discrete_log(&self, target: u64) -> Result<u64> {
        if target == 0 || target >= self.p {
            return Err(Error::InvalidParams(format!(
                "{target} is not in the group modulo {}",
                self.p
            )));
        }
        (1..self.p)
            .find(|&x| mod_pow(self.g, x, self.p) == target)
            .ok_or_else(|| Error::InvalidParams(format!("{target} is not a power of {}", self.g)))
    }

    pub fn is_solution(&self, exponent: u64, target: u64) -> bool {
        mod_pow(self.g, exponent, self.p) == target
    }

    fn check_range(&self, what: &str, value: u64) -> Result<()> {
        if value >= self.p {
            return Err(Error::InvalidParams(format!("{what} {value} must be below {}", self.p)));
        }
        Ok(())
    }
}

/// Candidate exponents and their database encoding.
#[derive(Debug, Clone)]
pub struct CandidateSet {
    pub candidates: Vec<u64>,
    pub database: Database,
}

impl CandidateSet {
    pub fn new(params: &DHParams, candidates: Vec<u64>) -> Result<Self> {
        if let Some(c) = candidates.iter().find(|&&c| c >= params.p) {
            return Err(Error::InvalidParams(format!(
                "candidate {c} must be below {}",
                params.p
            )));
        }
        for (i, c) in candidates.iter().enumerate() {
            if candidates[..i].contains(c) {
                return Err(Error::InvalidParams(format!("candidate {c} listed twice")));
            }
        }
        let database = Database::from_values(params.exponent_bits(), candidates.clone())?;
        Ok(CandidateSet { candidates, database })
    }
}

/// `count` distinct exponents below `p`: the true discrete log of `target`
/// plus non-solutions drawn with the seeded generator, shuffled. Other
/// solutions (only `0` when `target = 1`) are added only once the
/// non-solutions run out.
pub fn generate_candidates(params: &DHParams, target: u64, count: usize, seed: u64) -> Result<CandidateSet> {
    let secret = params.discrete_log(target)?;
    if count == 0 || count as u64 > params.p {
        return Err(Error::InvalidParams(format!(
            "candidate count must be in 1..={}",
            params.p
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (decoys, others): (Vec<u64>, Vec<u64>) = (0..params.p)
        .filter(|&x| x != secret)
        .partition(|&x| !params.is_solution(x, target));
    let mut chosen = vec![secret];
    chosen.extend(decoys.choose_multiple(&mut rng, count - 1));
    chosen.extend(others.iter().take(count - chosen.len()));
    chosen.shuffle(&mut rng);
    CandidateSet::new(params, chosen)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttackMode {
    #[default]
    CircuitOracle,
    PrecomputedOracle,
}

impl fmt::Display for AttackMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AttackMode::CircuitOracle => "circuit_oracle",
            AttackMode::PrecomputedOracle => "precomputed_oracle",
        })
    }
}

impl FromStr for AttackMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "circuit_oracle" | "circuit" => Ok(AttackMode::CircuitOracle),
            "precomputed_oracle" | "precomputed" => Ok(AttackMode::PrecomputedOracle),
            other => Err(Error::InvalidParams(format!("unknown attack mode `{other}`"))),
        }
    }
}

/// A built attack: the search program plus the register values every
/// iteration must restore.
#[derive(Debug, Clone)]
pub struct AttackProgram {
    pub program: SearchProgram,
    /// Padded candidate list, one per index.
    pub candidates: Database,
    pub restored: Vec<(Register, u64)>,
}

pub fn build_attack_circuit(
    params: &DHParams,
    target: u64,
    candidates: &CandidateSet,
    mode: AttackMode,
    oracle: OracleMode,
) -> Result<AttackProgram> {
    params.discrete_log(target)?;
    let padded = candidates.database.padded();
    if padded.matching(|x| params.is_solution(x, target)).is_empty() {
        return Err(Error::NoWinner);
    }
    let m = padded.index_width();
    let nx = params.exponent_bits();

    let mut alloc = QubitAllocator::new();
    let index = alloc.register("index", m);
    let mut prep = hadamard_transform(&index);
    let mut restored = Vec::new();
    let (exponent, modexp_layout) = match mode {
        AttackMode::CircuitOracle => {
            let n = modulus_width(params.p)?;
            let layout = ModExpLayout::allocate(&mut alloc, nx, n);
            prep.extend(layout.prep_gates(params.p));
            restored.extend([
                (layout.exponent.clone(), 0),
                (layout.a.clone(), 1),
                (layout.b.clone(), 0),
                (Register::new("overflow", vec![layout.overflow]), 0),
                (layout.temp.clone(), 0),
                (layout.c.clone(), 0),
                (layout.m.clone(), params.p),
                (Register::new("t", vec![layout.t]), 0),
            ]);
            (layout.exponent.clone(), Some(layout))
        }
        AttackMode::PrecomputedOracle => {
            let x = alloc.register("x", nx);
            restored.push((x.clone(), 0));
            (x, None)
        }
    };
    let target_qubit = match oracle {
        OracleMode::PhaseFlip => OracleTarget::PhaseFlip,
        OracleMode::AncillaKickback => {
            let a = alloc.qubit("ancilla");
            prep.extend([crate::sim::Gate::x(a), crate::sim::Gate::h(a)]);
            OracleTarget::Kickback(a)
        }
    };

    let (load, _) = dictionary_gates(&padded, Padding::Duplicate, &index, &exponent)?;
    let mut iteration = load.clone();
    match &modexp_layout {
        Some(layout) => {
            let forward = modexp(params.g, params.p, layout)?;
            let clause = Clause::exact(target, layout.output().width());
            iteration.extend(forward.iter().cloned());
            iteration.extend(phase_oracle(&clause, layout.output(), target_qubit)?);
            iteration.extend(inverse_gates(&forward));
        }
        None => {
            for x in (0..1u64 << nx).filter(|&x| params.is_solution(x, target)) {
                iteration.extend(phase_oracle(&Clause::exact(x, nx), &exponent, target_qubit)?);
            }
        }
    }
    iteration.extend(inverse_gates(&load));
    iteration.extend(diffuser(&index));

    let program = SearchProgram {
        num_qubits: alloc.num_qubits(),
        registers: alloc.registers().clone(),
        prep,
        iteration,
    };
    Ok(AttackProgram {
        program,
        candidates: padded,
        restored,
    })
}

#[derive(Debug, Clone)]
pub struct AttackOptions {
    pub mode: AttackMode,
    pub oracle: OracleMode,
    pub rounds: Option<usize>,
    pub max_qubits: usize,
}

impl Default for AttackOptions {
    fn default() -> Self {
        AttackOptions {
            mode: AttackMode::CircuitOracle,
            oracle: OracleMode::PhaseFlip,
            rounds: None,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

/// Attack report; field order is the serialized key order.
#[derive(Debug, Clone, Serialize)]
pub struct AttackResult {
    pub params: DHParams,
    pub target: u64,
    pub candidates: Vec<u64>,
    pub mode: AttackMode,
    pub rounds: usize,
    pub distribution: BTreeMap<u64, f64>,
    pub recovered: u64,
    pub probability: f64,
    pub qubits: usize,
    pub gates: GateCounts,
    pub oracle: OracleMode,
    pub plan: GroverPlan,
    /// Total probability on indices holding a correct exponent.
    pub success_probability: f64,
    /// `g^recovered mod p == target`.
    pub verified: bool,
}

pub fn run_attack(
    params: &DHParams,
    target: u64,
    candidates: &CandidateSet,
    options: &AttackOptions,
) -> Result<AttackResult> {
    run_attack_with::<f64>(params, target, candidates, options)
}

pub fn run_attack_with<T: Real>(
    params: &DHParams,
    target: u64,
    candidates: &CandidateSet,
    options: &AttackOptions,
) -> Result<AttackResult> {
    let built = build_attack_circuit(params, target, candidates, options.mode, options.oracle)?;
    let winners = built.candidates.matching(|x| params.is_solution(x, target));
    let plan = optimal_rounds(built.candidates.len() as u64, winners.len() as u64)?;
    let rounds = options.rounds.unwrap_or(plan.rounds);

    let state = built.program.simulate::<T>(0, rounds, options.max_qubits, |round, s| {
        for (reg, value) in &built.restored {
            let residue = 1.0 - s.register_probability(reg, *value)?;
            if residue > restore_tolerance::<T>() {
                return Err(Error::Invariant(format!(
                    "register {} not restored after iteration {round} (residue {residue:e})",
                    reg.name
                )));
            }
        }
        Ok(())
    })?;
    let distribution = state.marginal_distribution(built.program.register("index"))?;
    let (index, probability) = argmax(&distribution);
    let recovered = built.candidates.record(index as usize);
    let success_probability = winners
        .iter()
        .map(|&w| distribution.get(&(w as u64)).copied().unwrap_or(0.0))
        .sum();
    Ok(AttackResult {
        params: *params,
        target,
        candidates: candidates.candidates.clone(),
        mode: options.mode,
        rounds,
        distribution,
        recovered,
        probability,
        qubits: built.program.num_qubits,
        gates: built.program.gate_counts(rounds, false),
        oracle: options.oracle,
        plan,
        success_probability,
        verified: params.is_solution(recovered, target),
    })
}
