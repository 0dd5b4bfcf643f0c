// SPDX-License-Identifier: Apache-2.0

//! Two-level logic minimization and compilation of covers into
//! multi-controlled NOT networks.
//!
//! Input `k` of a truth table is bit `k` of the row index, so the last input
//! (`m - 1`) is the most significant. Cube patterns are written most
//! significant input first: `01-` over three inputs reads
//! (input 2 negative, input 1 positive, input 0 absent).
//!
//! Compiled networks XOR each cube onto the target. That equals the OR of the
//! cubes only when no input is covered twice, so [`minimize`] always returns
//! pairwise-disjoint cubes and [`cover_to_gates`] refuses anything else.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use crate::dictionary::Database;
use crate::error::{Error, Result};
use crate::sim::{Control, Gate, QubitIndex, Register};

pub const MAX_INPUTS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    num_inputs: usize,
    outputs: Vec<bool>,
    care: Vec<bool>,
}

impl TruthTable {
    /// Fully specified table.
    pub fn new(num_inputs: usize, outputs: Vec<bool>) -> Result<Self> {
        let care = vec![true; outputs.len()];
        Self::with_care(num_inputs, outputs, care)
    }

    /// Table with don't-cares wherever `care[i]` is false.
    pub fn with_care(num_inputs: usize, outputs: Vec<bool>, care: Vec<bool>) -> Result<Self> {
        if num_inputs > MAX_INPUTS {
            return Err(Error::InvalidParams(format!(
                "truth tables support at most {MAX_INPUTS} inputs, got {num_inputs}"
            )));
        }
        let rows = 1usize << num_inputs;
        if outputs.len() != rows || care.len() != rows {
            return Err(Error::InvalidParams(format!(
                "a {num_inputs}-input table needs {rows} rows"
            )));
        }
        Ok(TruthTable {
            num_inputs,
            outputs,
            care,
        })
    }

    /// Convenience constructor from 0/1 values; the row count must be a
    /// power of two.
    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if !bits.len().is_power_of_two() {
            return Err(Error::InvalidParams("row count must be a power of two".into()));
        }
        let m = bits.len().trailing_zeros() as usize;
        Self::new(m, bits.iter().map(|&b| b != 0).collect())
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn rows(&self) -> usize {
        self.outputs.len()
    }

    pub fn output(&self, row: usize) -> bool {
        self.outputs[row]
    }

    pub fn is_care(&self, row: usize) -> bool {
        self.care[row]
    }

    pub fn outputs(&self) -> &[bool] {
        &self.outputs
    }

    /// Number of specified rows whose output is 1.
    pub fn ones(&self) -> usize {
        (0..self.rows()).filter(|&i| self.care[i] && self.outputs[i]).count()
    }

    fn is_care_one(&self, row: usize) -> bool {
        self.care[row] && self.outputs[row]
    }
}

/// A product term: input `k` appears iff bit `k` of `care` is set, with the
/// polarity given by bit `k` of `value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Cube {
    care: u32,
    value: u32,
}

impl Cube {
    /// The cube with every literal absent (constant 1).
    pub fn universe() -> Self {
        Cube { care: 0, value: 0 }
    }

    pub fn minterm(row: usize, num_inputs: usize) -> Self {
        let care = ((1u64 << num_inputs) - 1) as u32;
        Cube {
            care,
            value: row as u32 & care,
        }
    }

    pub fn new(care: u32, value: u32) -> Self {
        Cube {
            care,
            value: value & care,
        }
    }

    /// Parses a pattern over `{0,1,-}`, most significant input first.
    pub fn parse(pattern: &str) -> Result<Self> {
        let m = pattern.len();
        let mut cube = Cube::universe();
        for (pos, ch) in pattern.chars().enumerate() {
            let bit = 1u32 << (m - 1 - pos);
            match ch {
                '1' => {
                    cube.care |= bit;
                    cube.value |= bit;
                }
                '0' => cube.care |= bit,
                '-' => {}
                _ => return Err(Error::InvalidParams(format!("bad cube pattern `{pattern}`"))),
            }
        }
        Ok(cube)
    }

    pub fn care(&self) -> u32 {
        self.care
    }

    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn covers(&self, row: usize) -> bool {
        (row as u32 & self.care) == self.value
    }

    pub fn literal_count(&self) -> u32 {
        self.care.count_ones()
    }

    pub fn intersects(&self, other: &Cube) -> bool {
        (self.value ^ other.value) & self.care & other.care == 0
    }

    pub fn pattern(&self, num_inputs: usize) -> String {
        (0..num_inputs)
            .rev()
            .map(|k| {
                if self.care >> k & 1 == 0 {
                    '-'
                } else if self.value >> k & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    /// Rows covered by the cube, in increasing order.
    fn rows(&self, num_inputs: usize) -> impl Iterator<Item = usize> {
        let free = (((1u64 << num_inputs) - 1) as u32) & !self.care;
        let value = self.value;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let s = next?;
            next = if s == free {
                None
            } else {
                Some(((s | !free).wrapping_add(1)) & free)
            };
            Some((s | value) as usize)
        })
    }

    /// Lexicographic order on patterns with `- < 0 < 1`, most significant
    /// input first.
    fn lex_cmp(&self, other: &Cube, num_inputs: usize) -> Ordering {
        let rank = |c: &Cube, k: usize| {
            if c.care >> k & 1 == 0 {
                0
            } else {
                1 + (c.value >> k & 1)
            }
        };
        (0..num_inputs)
            .rev()
            .map(|k| rank(self, k).cmp(&rank(other, k)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }

    /// Pieces of `self` not covered by `other`, pairwise disjoint. Splits on
    /// `other`'s extra literals from the most significant input down.
    fn sharp(&self, other: &Cube) -> Vec<Cube> {
        if !self.intersects(other) {
            return vec![*self];
        }
        let mut pieces = Vec::new();
        let mut rest = *self;
        let extra = other.care & !self.care;
        for k in (0..32).rev().filter(|k| extra >> k & 1 == 1) {
            let bit = 1u32 << k;
            pieces.push(Cube {
                care: rest.care | bit,
                value: rest.value | (!other.value & bit),
            });
            rest = Cube {
                care: rest.care | bit,
                value: rest.value | (other.value & bit),
            };
        }
        pieces
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    num_inputs: usize,
    cubes: Vec<Cube>,
}

impl Cover {
    pub fn new(num_inputs: usize, cubes: Vec<Cube>) -> Self {
        Cover { num_inputs, cubes }
    }

    /// Builds a cover from `{0,1,-}` patterns.
    pub fn from_patterns(num_inputs: usize, patterns: &[&str]) -> Result<Self> {
        let cubes = patterns.iter().map(|p| Cube::parse(p)).collect::<Result<_>>()?;
        Ok(Cover { num_inputs, cubes })
    }

    pub fn num_inputs(&self) -> usize {
        self.num_inputs
    }

    pub fn cubes(&self) -> &[Cube] {
        &self.cubes
    }

    pub fn len(&self) -> usize {
        self.cubes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cubes.is_empty()
    }

    /// OR of cube matches.
    pub fn evaluate(&self, row: usize) -> bool {
        self.cubes.iter().any(|c| c.covers(row))
    }

    /// First overlapping pair, if any.
    pub fn overlap(&self) -> Option<(Cube, Cube)> {
        for (i, a) in self.cubes.iter().enumerate() {
            for b in &self.cubes[i + 1..] {
                if a.intersects(b) {
                    return Some((*a, *b));
                }
            }
        }
        None
    }

    pub fn is_disjoint(&self) -> bool {
        self.overlap().is_none()
    }

    pub fn patterns(&self) -> Vec<String> {
        self.cubes.iter().map(|c| c.pattern(self.num_inputs)).collect()
    }
}

impl fmt::Display for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in self.patterns() {
            writeln!(f, "{p}")?;
        }
        Ok(())
    }
}

/// Truth table of one record column over the database's index space.
/// Column 0 is the leftmost character of each record. The database must
/// already be padded to `2^m` records.
pub fn column_truth_table(database: &Database, column: usize) -> Result<TruthTable> {
    if column >= database.width() {
        return Err(Error::ColumnOutOfRange {
            column,
            width: database.width(),
        });
    }
    let m = database.index_width();
    let rows = 1usize << m;
    if database.len() != rows {
        return Err(Error::InvalidParams(format!(
            "database has {} records; pad it to {rows} first",
            database.len()
        )));
    }
    let outputs = (0..rows).map(|i| database.bit(i, column)).collect();
    TruthTable::new(m, outputs)
}

/// Quine–McCluskey prime implicants, greedy set cover, then a
/// disjointness pass that splits overlapping implicants.
///
/// Greedy picks the implicant covering the most still-uncovered ones;
/// ties go to fewer literals, then to the lexicographically smaller pattern.
pub fn minimize(table: &TruthTable) -> Cover {
    let m = table.num_inputs();
    let primes: Vec<Cube> = prime_implicants(table)
        .into_iter()
        .filter(|p| p.rows(m).any(|r| table.is_care_one(r)))
        .collect();

    let mut uncovered: Vec<bool> = (0..table.rows()).map(|r| table.is_care_one(r)).collect();
    let mut remaining = table.ones();
    let mut selected = Vec::new();
    let mut used = vec![false; primes.len()];
    while remaining > 0 {
        let mut best: Option<(usize, usize)> = None;
        for (idx, p) in primes.iter().enumerate() {
            if used[idx] {
                continue;
            }
            let gain = p.rows(m).filter(|&r| uncovered[r]).count();
            if gain == 0 {
                continue;
            }
            let better = match best {
                None => true,
                Some((b, bgain)) => {
                    let q = &primes[b];
                    gain > bgain
                        || (gain == bgain
                            && (p.literal_count() < q.literal_count()
                                || (p.literal_count() == q.literal_count() && p.lex_cmp(q, m) == Ordering::Less)))
                }
            };
            if better {
                best = Some((idx, gain));
            }
        }
        let (idx, gain) = best.expect("every care one lies in some prime implicant");
        used[idx] = true;
        for r in primes[idx].rows(m) {
            uncovered[r] = false;
        }
        remaining -= gain;
        selected.push(primes[idx]);
    }

    let mut disjoint: Vec<Cube> = Vec::new();
    for cube in selected {
        let mut pieces = vec![cube];
        for d in &disjoint {
            pieces = pieces.iter().flat_map(|p| p.sharp(d)).collect();
        }
        pieces.retain(|p| p.rows(m).any(|r| table.is_care_one(r)));
        disjoint.extend(pieces);
    }
    Cover::new(m, disjoint)
}

fn prime_implicants(table: &TruthTable) -> Vec<Cube> {
    let m = table.num_inputs();
    let mut current: HashSet<Cube> = (0..table.rows())
        .filter(|&r| !table.is_care(r) || table.output(r))
        .map(|r| Cube::minterm(r, m))
        .collect();
    let mut primes = Vec::new();
    while !current.is_empty() {
        let mut next = HashSet::new();
        let mut merged = HashSet::new();
        for c in &current {
            for k in (0..m).filter(|k| c.care >> k & 1 == 1) {
                let bit = 1u32 << k;
                let partner = Cube {
                    care: c.care,
                    value: c.value ^ bit,
                };
                if current.contains(&partner) {
                    next.insert(Cube {
                        care: c.care & !bit,
                        value: c.value & !bit,
                    });
                    merged.insert(*c);
                }
            }
        }
        primes.extend(current.iter().filter(|c| !merged.contains(c)).copied());
        current = next;
    }
    primes.sort_by(|a, b| a.lex_cmp(b, m));
    primes
}

/// True iff the cover agrees with the table on every specified row.
pub fn verify_cover(cover: &Cover, table: &TruthTable) -> bool {
    cover.num_inputs() == table.num_inputs()
        && (0..table.rows()).all(|r| !table.is_care(r) || cover.evaluate(r) == table.output(r))
}

/// One MCX per cube, controls listed most significant input first. An
/// all-absent cube becomes a plain `X`.
pub fn cover_to_gates(cover: &Cover, index: &Register, target: QubitIndex) -> Result<Vec<Gate>> {
    if index.width() < cover.num_inputs() {
        return Err(Error::InvalidParams(format!(
            "index register has {} qubits, cover needs {}",
            index.width(),
            cover.num_inputs()
        )));
    }
    if let Some((a, b)) = cover.overlap() {
        let m = cover.num_inputs();
        return Err(Error::NotDisjoint(a.pattern(m), b.pattern(m)));
    }
    Ok(cover
        .cubes()
        .iter()
        .map(|cube| {
            if cube.care == 0 {
                return Gate::x(target);
            }
            let controls = (0..cover.num_inputs())
                .rev()
                .filter(|k| cube.care >> k & 1 == 1)
                .map(|k| Control::matching(index.qubit(k), cube.value >> k & 1 == 1))
                .collect();
            Gate::mcx(controls, target)
        })
        .collect())
}
