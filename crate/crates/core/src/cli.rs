// SPDX-License-Identifier: Apache-2.0

//! The `gdict` command line.
//!
//! Every subcommand builds a serializable report. It goes to `--out` when
//! given (with a one-line summary on stdout), otherwise to stdout.
//! Exit codes: 0 success, 1 bad input or domain error, 2 verification
//! failure.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::dh::{generate_candidates, run_attack_with, AttackMode, AttackOptions, AttackResult, DHParams};
use crate::dictionary::{build_dictionary_with, Database, Padding};
use crate::error::{Error, Result};
use crate::grover::{run_search_with, Clause, OracleMode, SearchOptions, SearchResult};
use crate::modarith::verify::{
    verify_adder, verify_modexp, verify_modular_adder, verify_multiplier, verify_subtractor, VerifyReport,
};
use crate::modarith::{adder_circuit, modexp_circuit, modular_adder_circuit, multiplier_circuit};
use crate::numtheory::bits_for;
use crate::sim::{Circuit, GateCounts, Real, StateVector, DEFAULT_MAX_QUBITS, HARD_MAX_QUBITS};

pub const MAX_QUBITS_ENV: &str = "GDICT_MAX_QUBITS";

#[derive(Debug, Parser)]
#[command(name = "gdict", version, about = "Grover search over classical databases")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = Precision::Double)]
    pub precision: Precision,

    /// Qubit cap for simulation; defaults to $GDICT_MAX_QUBITS or 26.
    #[arg(long, global = true)]
    pub max_qubits: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Precision {
    Double,
    Single,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PaddingArg {
    Duplicate,
    DontCare,
}

impl From<PaddingArg> for Padding {
    fn from(p: PaddingArg) -> Self {
        match p {
            PaddingArg::Duplicate => Padding::Duplicate,
            PaddingArg::DontCare => Padding::DontCare,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleArg {
    PhaseFlip,
    AncillaKickback,
}

impl From<OracleArg> for OracleMode {
    fn from(o: OracleArg) -> Self {
        match o {
            OracleArg::PhaseFlip => OracleMode::PhaseFlip,
            OracleArg::AncillaKickback => OracleMode::AncillaKickback,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AttackArg {
    #[value(alias = "circuit")]
    CircuitOracle,
    #[value(alias = "precomputed")]
    PrecomputedOracle,
}

impl From<AttackArg> for AttackMode {
    fn from(a: AttackArg) -> Self {
        match a {
            AttackArg::CircuitOracle => AttackMode::CircuitOracle,
            AttackArg::PrecomputedOracle => AttackMode::PrecomputedOracle,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Adder,
    Subtractor,
    Modadd,
    Modmul,
    Modexp,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compile a database file into a dictionary circuit.
    SynthDict {
        database: PathBuf,
        #[arg(long, value_enum, default_value_t = PaddingArg::Duplicate)]
        padding: PaddingArg,
    },
    /// Run a dictionary search for a clause over {0,1,x}.
    GroverSearch {
        database: PathBuf,
        clause: String,
        #[arg(long)]
        rounds: Option<usize>,
        /// Winner count used for planning instead of the classical scan.
        #[arg(long)]
        winners: Option<u64>,
        #[arg(long, value_enum, default_value_t = OracleArg::PhaseFlip)]
        mode: OracleArg,
        #[arg(long, value_enum, default_value_t = PaddingArg::Duplicate)]
        padding: PaddingArg,
    },
    /// Check an arithmetic circuit exhaustively against integer arithmetic.
    VerifyArith(VerifyArgs),
    /// Recover a Diffie-Hellman exponent from a candidate list.
    DhAttack(AttackArgs),
    /// Simulate a circuit file from a basis state.
    Simulate {
        circuit: PathBuf,
        /// Initial basis state of the whole circuit.
        #[arg(long, default_value_t = 0)]
        init: u64,
        /// Report the marginal of this register instead of the full state.
        #[arg(long)]
        register: Option<String>,
        /// Sample this many shots instead of reporting probabilities.
        #[arg(long)]
        shots: Option<u64>,
    },
    /// Count gates in a circuit file.
    Gatecount {
        circuit: PathBuf,
        /// Add a two-controlled-gate estimate for multi-controlled gates.
        #[arg(long)]
        decompose: bool,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub family: FamilyArg,
    /// Register width for adder and subtractor.
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Modulus, of the form 2^k - 1.
    #[arg(long = "modulus", short = 'N', default_value_t = 7)]
    pub modulus: u64,
    /// Multipliers to check (default: all of 1..N).
    #[arg(long = "a", value_delimiter = ',')]
    pub multipliers: Vec<u64>,
    #[arg(long, default_value_t = 3)]
    pub g: u64,
    #[arg(long)]
    pub exponent_bits: Option<usize>,
    /// Also write the circuit in text format.
    #[arg(long)]
    pub emit: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AttackArgs {
    #[arg(long, default_value_t = 7)]
    pub p: u64,
    #[arg(long, default_value_t = 3)]
    pub g: u64,
    /// Secret exponent; the target is derived from it.
    #[arg(long, conflicts_with = "target", required_unless_present = "target")]
    pub secret: Option<u64>,
    /// Intercepted public value.
    #[arg(long)]
    pub target: Option<u64>,
    #[arg(long, default_value_t = 4)]
    pub count: usize,
    #[arg(long, value_enum, default_value_t = AttackArg::CircuitOracle)]
    pub mode: AttackArg,
    #[arg(long, value_enum, default_value_t = OracleArg::PhaseFlip)]
    pub oracle: OracleArg,
    #[arg(long)]
    pub rounds: Option<usize>,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Invariant(_) => 2,
                _ => 1,
            }
        }
    }
}

fn max_qubits(cli: &Cli) -> Result<usize> {
    let cap = match cli.max_qubits {
        Some(n) => n,
        None => match std::env::var(MAX_QUBITS_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map_err(|_| Error::InvalidParams(format!("{MAX_QUBITS_ENV}={v} is not a number")))?,
            Err(_) => DEFAULT_MAX_QUBITS,
        },
    };
    if cap > HARD_MAX_QUBITS {
        return Err(Error::Capacity {
            requested: cap,
            limit: HARD_MAX_QUBITS,
        });
    }
    Ok(cap)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<u8> {
    let cap = max_qubits(cli)?;
    match &cli.command {
        Command::SynthDict { database, padding } => synth_dict(cli, database, (*padding).into(), out),
        Command::GroverSearch {
            database,
            clause,
            rounds,
            winners,
            mode,
            padding,
        } => {
            let db = Database::from_file(database)?;
            let clause = Clause::parse(clause)?;
            let options = SearchOptions {
                rounds: *rounds,
                winners: *winners,
                mode: (*mode).into(),
                padding: (*padding).into(),
                max_qubits: cap,
            };
            let result = match cli.precision {
                Precision::Double => run_search_with::<f64>(&db, &clause, &options)?,
                Precision::Single => run_search_with::<f32>(&db, &clause, &options)?,
            };
            let summary = format!(
                "top index {} ({:0w$b}) record {} probability {:.6}",
                result.top_index,
                result.top_index,
                result.top_record,
                result.probability,
                w = db.index_width()
            );
            emit(
                cli,
                out,
                &result,
                Some(&result.distribution),
                &search_text(&result),
                &summary,
            )?;
            Ok(0)
        }
        Command::VerifyArith(args) => verify_arith(cli, args, out),
        Command::DhAttack(args) => {
            let params = DHParams::new(args.p, args.g)?;
            let target = match (args.secret, args.target) {
                (Some(s), _) => params.public_value(s)?,
                (None, Some(t)) => t,
                (None, None) => unreachable!("clap requires one of --secret/--target"),
            };
            let candidates = generate_candidates(&params, target, args.count, cli.seed)?;
            let options = AttackOptions {
                mode: args.mode.into(),
                oracle: args.oracle.into(),
                rounds: args.rounds,
                max_qubits: cap,
            };
            let result = match cli.precision {
                Precision::Double => run_attack_with::<f64>(&params, target, &candidates, &options)?,
                Precision::Single => run_attack_with::<f32>(&params, target, &candidates, &options)?,
            };
            let summary = format!("recovered {} probability {:.6}", result.recovered, result.probability);
            emit(
                cli,
                out,
                &result,
                Some(&result.distribution),
                &attack_text(&result),
                &summary,
            )?;
            Ok(0)
        }
        Command::Simulate {
            circuit,
            init,
            register,
            shots,
        } => {
            let c = Circuit::from_file(circuit)?;
            let report = match cli.precision {
                Precision::Double => simulate::<f64>(&c, *init, register.as_deref(), *shots, cli.seed, cap)?,
                Precision::Single => simulate::<f32>(&c, *init, register.as_deref(), *shots, cli.seed, cap)?,
            };
            let mut text = String::new();
            for (v, p) in &report.distribution {
                let _ = writeln!(text, "{v} {p}");
            }
            let summary = format!(
                "{} outcomes over register {}",
                report.distribution.len(),
                report.register
            );
            emit(cli, out, &report, Some(&report.distribution), &text, &summary)?;
            Ok(0)
        }
        Command::Gatecount { circuit, decompose } => {
            let c = Circuit::from_file(circuit)?;
            let report = GatecountReport {
                qubits: c.num_qubits,
                total: c.len(),
                counts: c.gate_counts(*decompose),
            };
            let mut text = format!("qubits {}\ntotal {}\n", report.qubits, report.total);
            for (k, v) in &report.counts {
                let _ = writeln!(text, "{k} {v}");
            }
            let summary = format!("{} gates on {} qubits", report.total, report.qubits);
            emit::<f64>(cli, out, &report, None, &text, &summary)?;
            Ok(0)
        }
    }
}

/// Writes `report` in the selected format to `--out` or stdout. CSV is only
/// defined for reports with a distribution.
fn emit<P: Serialize + Copy>(
    cli: &Cli,
    out: &mut dyn Write,
    report: &impl Serialize,
    distribution: Option<&BTreeMap<u64, P>>,
    text: &str,
    summary: &str,
) -> Result<()> {
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(report)? + "\n",
        Format::Text => text.to_string(),
        Format::Csv => {
            let d = distribution
                .ok_or_else(|| Error::InvalidParams("csv output is only available for distributions".into()))?;
            let mut s = String::from("value,probability\n");
            for (k, v) in d {
                let _ = writeln!(s, "{k},{}", serde_json::to_string(v)?);
            }
            s
        }
    };
    match &cli.out {
        Some(path) => {
            std::fs::write(path, body)?;
            writeln!(out, "{summary}")?;
        }
        None => out.write_all(body.as_bytes())?,
    }
    Ok(())
}

fn search_text(r: &SearchResult) -> String {
    let mut s = format!(
        "clause {}\nrounds {}\ntop_index {}\ntop_record {}\nprobability {}\n",
        r.clause, r.rounds, r.top_index, r.top_record, r.probability
    );
    for (k, v) in &r.distribution {
        let _ = writeln!(s, "{k} {v}");
    }
    s
}

fn attack_text(r: &AttackResult) -> String {
    let mut s = format!(
        "p {} g {}\ntarget {}\ncandidates {:?}\nrounds {}\nrecovered {}\nprobability {}\n",
        r.params.p, r.params.g, r.target, r.candidates, r.rounds, r.recovered, r.probability
    );
    for (k, v) in &r.distribution {
        let _ = writeln!(s, "{k} {v}");
    }
    s
}

#[derive(Debug, Serialize)]
struct DictionarySidecar {
    records: Vec<String>,
    original_records: usize,
    m: usize,
    n: usize,
    padding: Padding,
    cubes_per_column: Vec<usize>,
    mcx_count: usize,
}

fn synth_dict(cli: &Cli, path: &Path, padding: Padding, out: &mut dyn Write) -> Result<u8> {
    let db = Database::from_file(path)?;
    let dict = build_dictionary_with(&db, padding)?;
    let sidecar = DictionarySidecar {
        records: dict.database.record_strings(),
        original_records: db.original_len(),
        m: dict.database.index_width(),
        n: db.width(),
        padding,
        cubes_per_column: dict.cubes_per_column(),
        mcx_count: dict.mcx_count(),
    };
    let text = dict.circuit.to_text();
    match &cli.out {
        Some(target) => {
            std::fs::write(target, &text)?;
            std::fs::write(
                target.with_extension("json"),
                serde_json::to_string_pretty(&sidecar)? + "\n",
            )?;
            writeln!(
                out,
                "{} records (from {}), m={} n={}, {} MCX",
                sidecar.records.len(),
                sidecar.original_records,
                sidecar.m,
                sidecar.n,
                sidecar.mcx_count
            )?;
        }
        None => match cli.format {
            Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&sidecar)?)?,
            _ => out.write_all(text.as_bytes())?,
        },
    }
    Ok(0)
}

fn verify_arith(cli: &Cli, args: &VerifyArgs, out: &mut dyn Write) -> Result<u8> {
    let exponent_bits = args.exponent_bits.unwrap_or_else(|| bits_for(args.modulus));
    let report: VerifyReport = match args.family {
        FamilyArg::Adder => verify_adder(args.n)?,
        FamilyArg::Subtractor => verify_subtractor(args.n)?,
        FamilyArg::Modadd => verify_modular_adder(args.modulus)?,
        FamilyArg::Modmul => verify_multiplier(args.modulus, &args.multipliers)?,
        FamilyArg::Modexp => verify_modexp(args.g, args.modulus, exponent_bits)?,
    };
    if let Some(path) = &args.emit {
        let circuit = match args.family {
            FamilyArg::Adder => adder_circuit(args.n)?.circuit,
            FamilyArg::Subtractor => adder_circuit(args.n)?.circuit.inverse(),
            FamilyArg::Modadd => modular_adder_circuit(args.modulus)?.circuit,
            FamilyArg::Modmul => {
                let a = args.multipliers.first().copied().unwrap_or(1);
                multiplier_circuit(a, args.modulus)?.circuit
            }
            FamilyArg::Modexp => modexp_circuit(args.g, args.modulus, exponent_bits)?.circuit,
        };
        std::fs::write(path, circuit.to_text())?;
    }
    let mut text = format!("{report}\n");
    for f in &report.failures {
        let _ = writeln!(
            text,
            "  {} expected {} got probability {}",
            f.case, f.expected, f.probability
        );
    }
    emit::<f64>(cli, out, &report, None, &text, &report.to_string())?;
    Ok(if report.ok() { 0 } else { 2 })
}

#[derive(Debug, Serialize)]
struct GatecountReport {
    qubits: usize,
    total: usize,
    counts: GateCounts,
}

#[derive(Debug, Serialize)]
struct SimulateReport {
    qubits: usize,
    register: String,
    init: u64,
    shots: Option<u64>,
    distribution: BTreeMap<u64, f64>,
}

fn simulate<T: Real>(
    circuit: &Circuit,
    init: u64,
    register: Option<&str>,
    shots: Option<u64>,
    seed: u64,
    cap: usize,
) -> Result<SimulateReport> {
    let reg = match register {
        Some(name) => circuit
            .register(name)
            .cloned()
            .ok_or_else(|| Error::InvalidParams(format!("circuit has no register `{name}`")))?,
        None => crate::sim::Register::contiguous("all", 0, circuit.num_qubits),
    };
    let mut state = StateVector::<T>::with_limit(circuit.num_qubits, init, cap)?;
    state.apply_circuit(circuit)?;
    let distribution = match shots {
        Some(n) => state
            .sample(&reg, n, seed)?
            .into_iter()
            .map(|(k, v)| (k, v as f64))
            .collect(),
        None => state.marginal_distribution(&reg)?,
    };
    Ok(SimulateReport {
        qubits: circuit.num_qubits,
        register: reg.name,
        init,
        shots,
        distribution,
    })
}
