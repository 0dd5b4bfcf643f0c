// SPDX-License-Identifier: Apache-2.0

//! Databases of fixed-width bit-string records and the dictionary operator
//! that loads them, `|i⟩|0⟩ ↦ |i⟩|R_i⟩`.
//!
//! Column `j` of a record is its `j`-th character from the left and lands on
//! data qubit `n - 1 - j`, so a data register reads back as the record
//! string's integer value.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{column_truth_table, cover_to_gates, minimize, Cover, TruthTable};
use crate::numtheory::bits_for;
use crate::sim::{Circuit, Gate, GateKind, Register};

/// Largest supported index register.
pub const MAX_INDEX_BITS: usize = 16;
/// Records are stored as integers.
pub const MAX_RECORD_BITS: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Database {
    width: usize,
    records: Vec<u64>,
    original_len: usize,
}

impl Database {
    /// Builds a database from `{0,1}` strings of equal length.
    pub fn new<S: AsRef<str>>(records: &[S]) -> Result<Self> {
        let mut values = Vec::with_capacity(records.len());
        let mut width = None;
        for (i, r) in records.iter().enumerate() {
            let (value, w) = parse_record(r.as_ref()).map_err(|message| Error::Parse { line: i + 1, message })?;
            match width {
                None => width = Some(w),
                Some(expected) if expected != w => {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: format!("record has {w} bits, expected {expected}"),
                    })
                }
                _ => {}
            }
            values.push(value);
        }
        Self::from_values(width.unwrap_or(0), values)
    }

    pub fn from_values(width: usize, records: Vec<u64>) -> Result<Self> {
        if records.is_empty() {
            return Err(Error::InvalidParams("database has no records".into()));
        }
        if width == 0 || width > MAX_RECORD_BITS {
            return Err(Error::InvalidParams(format!(
                "record width must be between 1 and {MAX_RECORD_BITS}, got {width}"
            )));
        }
        if records.len() > 1 << MAX_INDEX_BITS {
            return Err(Error::InvalidParams(format!(
                "at most {} records are supported",
                1usize << MAX_INDEX_BITS
            )));
        }
        if let Some(r) = records.iter().find(|&&r| r >> width != 0) {
            return Err(Error::InvalidParams(format!("record {r} does not fit in {width} bits")));
        }
        let original_len = records.len();
        Ok(Database {
            width,
            records,
            original_len,
        })
    }

    /// Parses the text file format: one record per line, blank lines and
    /// `#` comments ignored. Errors carry the offending line number.
    pub fn parse(text: &str) -> Result<Self> {
        let mut values = Vec::new();
        let mut width = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse { line: idx + 1, message };
            let (value, w) = parse_record(line).map_err(err)?;
            match width {
                None => width = Some(w),
                Some(expected) if expected != w => {
                    return Err(err(format!("record has {w} bits, expected {expected}")))
                }
                _ => {}
            }
            values.push(value);
        }
        if values.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "database has no records".into(),
            });
        }
        Self::from_values(width.unwrap_or(0), values)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Record width `n`.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    /// Index width `m = ⌈log₂ count⌉`, at least 1.
    pub fn index_width(&self) -> usize {
        bits_for(self.records.len() as u64)
    }

    /// Number of records before padding.
    pub fn original_len(&self) -> usize {
        self.original_len
    }

    pub fn is_padded(&self) -> bool {
        self.records.len() == 1 << self.index_width()
    }

    pub fn records(&self) -> &[u64] {
        &self.records
    }

    pub fn record(&self, index: usize) -> u64 {
        self.records[index]
    }

    pub fn record_string(&self, index: usize) -> String {
        format_record(self.records[index], self.width)
    }

    pub fn record_strings(&self) -> Vec<String> {
        (0..self.len()).map(|i| self.record_string(i)).collect()
    }

    /// Bit `column` of record `index`, column 0 being the leftmost.
    pub fn bit(&self, index: usize, column: usize) -> bool {
        self.records[index] >> (self.width - 1 - column) & 1 == 1
    }

    /// Extends the record list to `2^m` entries by repeating record 0.
    pub fn padded(&self) -> Database {
        let mut records = self.records.clone();
        records.resize(1 << self.index_width(), self.records[0]);
        Database {
            width: self.width,
            records,
            original_len: self.original_len,
        }
    }

    /// Indices whose record satisfies `predicate`.
    pub fn matching(&self, predicate: impl Fn(u64) -> bool) -> Vec<usize> {
        (0..self.len()).filter(|&i| predicate(self.records[i])).collect()
    }
}

impl fmt::Display for Database {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            writeln!(f, "{}", self.record_string(i))?;
        }
        Ok(())
    }
}

/// Free-standing form of [`Database::padded`].
pub fn pad_database(database: &Database) -> Database {
    database.padded()
}

fn parse_record(s: &str) -> std::result::Result<(u64, usize), String> {
    if s.is_empty() {
        return Err("empty record".into());
    }
    if s.len() > MAX_RECORD_BITS {
        return Err(format!("records are limited to {MAX_RECORD_BITS} bits"));
    }
    let mut value = 0u64;
    for ch in s.chars() {
        value = value << 1
            | match ch {
                '0' => 0,
                '1' => 1,
                other => return Err(format!("unexpected character `{other}` in record")),
            };
    }
    Ok((value, s.len()))
}

pub fn format_record(value: u64, width: usize) -> String {
    format!("{value:0width$b}")
}

/// How indices past the original record count are filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Padding {
    /// Repeat record 0, so every index holds a genuine record.
    #[default]
    Duplicate,
    /// Leave padded indices unspecified and let the minimizer choose.
    /// The resulting records are whatever the covers produce.
    DontCare,
}

/// Per-column covers and gates of a dictionary operator placed on the given
/// registers. `data` must have at least `database.width()` qubits; column
/// `j` targets `data.qubit(n - 1 - j)`. Gates for column 0 come first.
pub fn dictionary_gates(
    database: &Database,
    padding: Padding,
    index: &Register,
    data: &Register,
) -> Result<(Vec<Gate>, Vec<Cover>)> {
    let n = database.width();
    if data.width() < n {
        return Err(Error::InvalidParams(format!(
            "data register has {} qubits, records need {n}",
            data.width()
        )));
    }
    let padded = database.padded();
    let m = padded.index_width();
    let mut gates = Vec::new();
    let mut covers = Vec::with_capacity(n);
    for column in 0..n {
        let table = match padding {
            Padding::Duplicate => column_truth_table(&padded, column)?,
            Padding::DontCare => {
                let outputs = (0..padded.len()).map(|i| padded.bit(i, column)).collect();
                let care = (0..padded.len()).map(|i| i < database.original_len()).collect();
                TruthTable::with_care(m, outputs, care)?
            }
        };
        let cover = minimize(&table);
        gates.extend(cover_to_gates(&cover, index, data.qubit(n - 1 - column))?);
        covers.push(cover);
    }
    Ok((gates, covers))
}

/// The dictionary operator on an `m`-qubit index register (qubits `0..m`)
/// followed by an `n`-qubit data register.
#[derive(Debug, Clone)]
pub struct DictionaryCircuit {
    pub circuit: Circuit,
    /// Records the circuit actually loads, one per index.
    pub database: Database,
    pub covers: Vec<Cover>,
    pub padding: Padding,
}

impl DictionaryCircuit {
    pub fn index_register(&self) -> &Register {
        &self.circuit.registers["index"]
    }

    pub fn data_register(&self) -> &Register {
        &self.circuit.registers["data"]
    }

    pub fn mcx_count(&self) -> usize {
        self.circuit.gates.iter().filter(|g| g.kind == GateKind::Mcx).count()
    }

    pub fn cubes_per_column(&self) -> Vec<usize> {
        self.covers.iter().map(Cover::len).collect()
    }

    pub fn inverse(&self) -> Circuit {
        self.circuit.inverse()
    }
}

pub fn build_dictionary(database: &Database) -> Result<DictionaryCircuit> {
    build_dictionary_with(database, Padding::Duplicate)
}

pub fn build_dictionary_with(database: &Database, padding: Padding) -> Result<DictionaryCircuit> {
    let m = database.index_width();
    let n = database.width();
    let index = Register::contiguous("index", 0, m);
    let data = Register::contiguous("data", m, n);
    let (gates, covers) = dictionary_gates(database, padding, &index, &data)?;
    let mut circuit = Circuit::with_gates(m + n, gates);
    circuit.add_register(index);
    circuit.add_register(data);

    let loaded = match padding {
        Padding::Duplicate => database.padded(),
        Padding::DontCare => {
            let records = (0..1usize << m)
                .map(|i| {
                    covers
                        .iter()
                        .enumerate()
                        .fold(0u64, |acc, (j, c)| acc | (c.evaluate(i) as u64) << (n - 1 - j))
                })
                .collect();
            Database {
                width: n,
                records,
                original_len: database.original_len(),
            }
        }
    };
    Ok(DictionaryCircuit {
        circuit,
        database: loaded,
        covers,
        padding,
    })
}

pub fn dictionary_inverse(dictionary: &DictionaryCircuit) -> Circuit {
    dictionary.inverse()
}
