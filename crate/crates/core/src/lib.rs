// SPDX-License-Identifier: Apache-2.0

//! Grover search over arbitrary classical databases.
//!
//! A database of `n`-bit records is compiled, one column at a time, into a
//! network of multi-controlled NOT gates (the *dictionary operator*) that
//! maps `|i⟩|0⟩` to `|i⟩|R_i⟩`. Sandwiching a phase oracle between the
//! dictionary and its inverse lets Grover's diffuser act on the index
//! register alone, so the search space has `2^⌈log₂ |R|⌉` elements
//! regardless of the record width.
//!
//! Modules:
//!
//! - [`sim`]: state vectors, gates, circuits and the circuit text format.
//! - [`logic`]: truth tables, two-level minimization and cover-to-gate
//!   compilation.
//! - [`dictionary`]: databases and the dictionary operator.
//! - [`grover`]: oracles, the diffuser, round planning and end-to-end search.
//! - [`modarith`]: reversible adders, modular adders, multipliers and
//!   modular exponentiation.
//! - [`dh`]: a toy discrete-log key-recovery attack built from the pieces
//!   above.
//! - [`cli`]: the `gdict` command-line front end.

pub mod cli;
pub mod dh;
pub mod dictionary;
mod error;
pub mod grover;
pub mod logic;
pub mod modarith;
pub mod numtheory;
pub mod sim;

pub use error::{Error, Result};
