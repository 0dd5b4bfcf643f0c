// SPDX-License-Identifier: Apache-2.0

//! Reversible arithmetic: ripple-carry addition, modular addition,
//! controlled modular multiplication and modular exponentiation.
//!
//! Moduli are restricted to `N = 2^n - 1`. With that choice every residue
//! fits in `n` qubits, and `a + b - N` for residues `a, b` lies strictly
//! between `-2^n` and `2^n`, so the top bit of an `(n + 1)`-qubit
//! accumulator is an exact sign flag for the conditional correction.
//!
//! Constructors come in two flavours: gate-list builders that take a layout
//! (so larger circuits can embed them) and `*_circuit` helpers that
//! allocate a fresh layout and return a self-contained [`Circuit`].

pub mod verify;

use crate::error::{Error, Result};
use crate::numtheory::{gcd, mersenne_exponent, mod_pow};
use crate::sim::{inverse_gates, Circuit, Control, Gate, QubitAllocator, QubitIndex, Register};

pub use crate::numtheory::mod_inverse;

/// Register width for residues modulo a supported `N`.
pub fn modulus_width(modulus: u64) -> Result<usize> {
    mersenne_exponent(modulus)
        .map(|k| k as usize)
        .ok_or(Error::UnsupportedModulus(modulus))
}

fn distinct(qubits: &[QubitIndex]) -> Result<()> {
    for (i, q) in qubits.iter().enumerate() {
        if qubits[..i].contains(q) {
            return Err(Error::OverlappingQubits(q.0));
        }
    }
    Ok(())
}

/// `c_next ⊕= maj(c, x, y)`, leaving `y` as `x ⊕ y`.
pub fn carry_block(c: QubitIndex, x: QubitIndex, y: QubitIndex, c_next: QubitIndex) -> Result<Vec<Gate>> {
    distinct(&[c, x, y, c_next])?;
    Ok(vec![Gate::ccx(x, y, c_next), Gate::cx(x, y), Gate::ccx(c, y, c_next)])
}

/// `y ← x ⊕ y ⊕ c`.
pub fn sum_block(c: QubitIndex, x: QubitIndex, y: QubitIndex) -> Result<Vec<Gate>> {
    distinct(&[c, x, y])?;
    Ok(vec![Gate::cx(x, y), Gate::cx(c, y)])
}

/// Registers of an `n`-bit adder: `x` (n), `y` (n + 1, top qubit receives
/// the final carry) and carries `c` (n, all returned to zero).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdderLayout {
    pub x: Register,
    pub y: Register,
    pub c: Register,
}

impl AdderLayout {
    pub fn n(&self) -> usize {
        self.x.width()
    }

    fn check(&self) -> Result<()> {
        let n = self.n();
        if n == 0 || self.y.width() != n + 1 || self.c.width() != n {
            return Err(Error::InvalidParams(format!(
                "adder layout needs x:{n}, y:{}, c:{n} qubits, got y:{}, c:{}",
                n + 1,
                self.y.width(),
                self.c.width()
            )));
        }
        let mut all = self.x.qubits.clone();
        all.extend(&self.y.qubits);
        all.extend(&self.c.qubits);
        distinct(&all)
    }
}

/// `|a⟩|b⟩|0⟩ ↦ |a⟩|a + b⟩|0⟩` with the sum on `n + 1` bits. The inverse
/// gate list subtracts modulo `2^(n+1)`; the top bit then flags underflow.
pub fn adder(layout: &AdderLayout) -> Result<Vec<Gate>> {
    layout.check()?;
    let n = layout.n();
    let (x, y, c) = (&layout.x, &layout.y, &layout.c);
    let next = |i: usize| if i + 1 == n { y.qubit(n) } else { c.qubit(i + 1) };
    let mut gates = Vec::with_capacity(8 * n - 2);
    for i in 0..n {
        gates.extend(carry_block(c.qubit(i), x.qubit(i), y.qubit(i), next(i))?);
    }
    gates.push(Gate::cx(x.qubit(n - 1), y.qubit(n - 1)));
    gates.extend(sum_block(c.qubit(n - 1), x.qubit(n - 1), y.qubit(n - 1))?);
    for i in (0..n - 1).rev() {
        gates.extend(inverse_gates(&carry_block(
            c.qubit(i),
            x.qubit(i),
            y.qubit(i),
            next(i),
        )?));
        gates.extend(sum_block(c.qubit(i), x.qubit(i), y.qubit(i))?);
    }
    Ok(gates)
}

/// An adder layout plus the modulus register `m` (holds `N` on entry and
/// exit) and the flag qubit `t` (zero on entry and exit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularLayout {
    pub adder: AdderLayout,
    pub m: Register,
    pub t: QubitIndex,
}

impl ModularLayout {
    fn check(&self, n: usize) -> Result<()> {
        self.adder.check()?;
        if self.adder.n() != n || self.m.width() != n {
            return Err(Error::InvalidParams(format!("modular layout must be {n} qubits wide")));
        }
        Ok(())
    }
}

/// `|a⟩|b⟩|N⟩|0⟩ ↦ |a⟩|(a + b) mod N⟩|N⟩|0⟩` for residues `a, b < N`.
pub fn modular_adder(layout: &ModularLayout, modulus: u64) -> Result<Vec<Gate>> {
    let n = modulus_width(modulus)?;
    layout.check(n)?;
    let AdderLayout { y, c, .. } = &layout.adder;
    let add_xy = adder(&layout.adder)?;
    let add_my = adder(&AdderLayout {
        x: layout.m.clone(),
        y: y.clone(),
        c: c.clone(),
    })?;
    let top = y.qubit(n);
    let toggle_m: Vec<Gate> = (0..n)
        .filter(|k| modulus >> k & 1 == 1)
        .map(|k| Gate::mcx(vec![Control::pos(layout.t)], layout.m.qubit(k)))
        .collect();

    let mut gates = add_xy.clone();
    gates.extend(inverse_gates(&add_my));
    // t = 1 iff a + b ≥ N, in which case m is cleared and nothing is added back
    gates.push(Gate::mcx(vec![Control::neg(top)], layout.t));
    gates.extend(toggle_m.iter().cloned());
    gates.extend(add_my);
    gates.extend(toggle_m);
    // (a + b mod N) - a is negative exactly when t = 1
    gates.extend(inverse_gates(&add_xy));
    gates.push(Gate::mcx(vec![Control::pos(top)], layout.t));
    gates.extend(add_xy);
    Ok(gates)
}

/// Workspace of a controlled multiplier. `inner.adder.x` is the temporary
/// register that holds each precomputed addend and `inner.adder.y` is the
/// output register (with its overflow qubit on top).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierLayout {
    pub ctrl: QubitIndex,
    pub input: Register,
    pub inner: ModularLayout,
}

impl MultiplierLayout {
    pub fn temp(&self) -> &Register {
        &self.inner.adder.x
    }

    pub fn output(&self) -> &Register {
        &self.inner.adder.y
    }
}

/// With `ctrl = 1`: `|x⟩|0⟩ ↦ |x⟩|a·x mod N⟩`. With `ctrl = 0` the output
/// receives a copy of `x`. Requires `x < N`.
pub fn controlled_modular_multiplier(a: u64, modulus: u64, layout: &MultiplierLayout) -> Result<Vec<Gate>> {
    let n = modulus_width(modulus)?;
    if a == 0 || a >= modulus {
        return Err(Error::InvalidParams(format!("multiplier {a} must be in 1..{modulus}")));
    }
    if layout.input.width() != n {
        return Err(Error::InvalidParams(format!("multiplier input must be {n} qubits")));
    }
    layout.inner.check(n)?;
    let adder = modular_adder(&layout.inner, modulus)?;
    let temp = layout.temp();
    let mut gates = Vec::new();
    for j in 0..n {
        let addend = (((1u128 << j) * a as u128) % modulus as u128) as u64;
        let load: Vec<Gate> = (0..n)
            .filter(|b| addend >> b & 1 == 1)
            .map(|b| {
                Gate::mcx(
                    vec![Control::pos(layout.ctrl), Control::pos(layout.input.qubit(j))],
                    temp.qubit(b),
                )
            })
            .collect();
        gates.extend(load.iter().cloned());
        gates.extend(adder.iter().cloned());
        gates.extend(load);
    }
    for j in 0..n {
        gates.push(Gate::mcx(
            vec![Control::neg(layout.ctrl), Control::pos(layout.input.qubit(j))],
            layout.output().qubit(j),
        ));
    }
    Ok(gates)
}

/// Workspace of modular exponentiation. `a` enters holding 1 and exits
/// holding `g^x mod N`; `b` and the workspaces return to their initial
/// values (zero, except `m` which holds `N`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModExpLayout {
    pub exponent: Register,
    pub a: Register,
    pub b: Register,
    pub overflow: QubitIndex,
    pub temp: Register,
    pub c: Register,
    pub m: Register,
    pub t: QubitIndex,
}

impl ModExpLayout {
    /// Allocates `exponent, a, b, overflow, temp, c, m, t` in that order.
    pub fn allocate(alloc: &mut QubitAllocator, exponent_bits: usize, n: usize) -> Self {
        ModExpLayout {
            exponent: alloc.register("x", exponent_bits),
            a: alloc.register("A", n),
            b: alloc.register("B", n),
            overflow: alloc.qubit("overflow"),
            temp: alloc.register("temp", n),
            c: alloc.register("carry", n),
            m: alloc.register("m", n),
            t: alloc.qubit("t"),
        }
    }

    /// Register holding `g^x mod N` at the end.
    pub fn output(&self) -> &Register {
        &self.a
    }

    fn multiplier(&self, ctrl: QubitIndex) -> MultiplierLayout {
        let y = self
            .b
            .extended("B+overflow", &Register::new("overflow", vec![self.overflow]));
        MultiplierLayout {
            ctrl,
            input: self.a.clone(),
            inner: ModularLayout {
                adder: AdderLayout {
                    x: self.temp.clone(),
                    y,
                    c: self.c.clone(),
                },
                m: self.m.clone(),
                t: self.t,
            },
        }
    }

    /// X gates that load `A = 1` and `m = N` from the all-zero state.
    pub fn prep_gates(&self, modulus: u64) -> Vec<Gate> {
        let mut gates = vec![Gate::x(self.a.qubit(0))];
        gates.extend(
            (0..self.m.width())
                .filter(|k| modulus >> k & 1 == 1)
                .map(|k| Gate::x(self.m.qubit(k))),
        );
        gates
    }

    /// Basis index of the initial state for exponent `x`.
    pub fn initial_basis(&self, x: u64, modulus: u64) -> usize {
        let s = self.exponent.deposit(0, x);
        let s = self.a.deposit(s, 1);
        self.m.deposit(s, modulus)
    }
}

/// `|x⟩|1⟩|0⟩ ↦ |x⟩|g^x mod N⟩|0⟩` with the output in `layout.a`.
pub fn modexp(g: u64, modulus: u64, layout: &ModExpLayout) -> Result<Vec<Gate>> {
    let n = modulus_width(modulus)?;
    if gcd(g % modulus, modulus) != 1 {
        return Err(Error::NotInvertible { value: g, modulus });
    }
    if layout.a.width() != n || layout.b.width() != n {
        return Err(Error::InvalidParams(format!("A and B must be {n} qubits")));
    }
    let mut gates = Vec::new();
    for i in 0..layout.exponent.width() {
        let factor = mod_pow(g, 1u64 << i, modulus);
        let inverse = mod_inverse(factor, modulus)?;
        let mult = layout.multiplier(layout.exponent.qubit(i));
        gates.extend(controlled_modular_multiplier(factor, modulus, &mult)?);
        gates.extend((0..n).map(|k| Gate::swap(layout.a.qubit(k), layout.b.qubit(k))));
        gates.extend(inverse_gates(&controlled_modular_multiplier(inverse, modulus, &mult)?));
    }
    Ok(gates)
}

/// A self-contained arithmetic circuit together with its register layout.
#[derive(Debug, Clone)]
pub struct ArithCircuit<L> {
    pub circuit: Circuit,
    pub layout: L,
}

fn finish<L>(alloc: &QubitAllocator, gates: Vec<Gate>, layout: L) -> ArithCircuit<L> {
    let mut circuit = alloc.circuit();
    circuit.gates = gates;
    ArithCircuit { circuit, layout }
}

fn allocate_adder(alloc: &mut QubitAllocator, x: &str, y: &str, n: usize) -> AdderLayout {
    AdderLayout {
        x: alloc.register(x, n),
        y: alloc.register(y, n + 1),
        c: alloc.register("carry", n),
    }
}

pub fn adder_circuit(n: usize) -> Result<ArithCircuit<AdderLayout>> {
    if n == 0 {
        return Err(Error::InvalidParams("adder width must be positive".into()));
    }
    let mut alloc = QubitAllocator::new();
    let layout = allocate_adder(&mut alloc, "x", "y", n);
    let gates = adder(&layout)?;
    Ok(finish(&alloc, gates, layout))
}

pub fn modular_adder_circuit(modulus: u64) -> Result<ArithCircuit<ModularLayout>> {
    let n = modulus_width(modulus)?;
    let mut alloc = QubitAllocator::new();
    let adder = allocate_adder(&mut alloc, "x", "y", n);
    let layout = ModularLayout {
        adder,
        m: alloc.register("m", n),
        t: alloc.qubit("t"),
    };
    let gates = modular_adder(&layout, modulus)?;
    Ok(finish(&alloc, gates, layout))
}

pub fn multiplier_circuit(a: u64, modulus: u64) -> Result<ArithCircuit<MultiplierLayout>> {
    let n = modulus_width(modulus)?;
    let mut alloc = QubitAllocator::new();
    let ctrl = alloc.qubit("ctrl");
    let input = alloc.register("input", n);
    let adder = allocate_adder(&mut alloc, "temp", "output", n);
    let inner = ModularLayout {
        adder,
        m: alloc.register("m", n),
        t: alloc.qubit("t"),
    };
    let layout = MultiplierLayout { ctrl, input, inner };
    let gates = controlled_modular_multiplier(a, modulus, &layout)?;
    Ok(finish(&alloc, gates, layout))
}

pub fn modexp_circuit(g: u64, modulus: u64, exponent_bits: usize) -> Result<ArithCircuit<ModExpLayout>> {
    let n = modulus_width(modulus)?;
    if exponent_bits == 0 {
        return Err(Error::InvalidParams("exponent register must be non-empty".into()));
    }
    let mut alloc = QubitAllocator::new();
    let layout = ModExpLayout::allocate(&mut alloc, exponent_bits, n);
    let gates = modexp(g, modulus, &layout)?;
    Ok(finish(&alloc, gates, layout))
}
