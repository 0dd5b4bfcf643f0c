// SPDX-License-Identifier: Apache-2.0

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex;
use num_traits::{Float, FloatConst};
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::circuit::{Circuit, Register};
use super::gate::{Gate, GateKind};
use crate::error::{Error, Result};

/// Default capacity: 2^26 double-precision amplitudes is 1 GiB.
pub const DEFAULT_MAX_QUBITS: usize = 26;

/// Upper bound on any configured capacity.
pub const HARD_MAX_QUBITS: usize = 30;

/// Amplitude component type. Implemented for `f64` (default) and `f32`.
pub trait Real: Float + FloatConst + Default + Send + Sync + fmt::Debug + 'static {
    fn from_f64(v: f64) -> Self;
    fn to_f64(self) -> f64;
}

impl Real for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(self) -> f64 {
        self
    }
}

impl Real for f32 {
    fn from_f64(v: f64) -> Self {
        v as f32
    }
    fn to_f64(self) -> f64 {
        self as f64
    }
}

/// Dense state vector over `num_qubits` qubits.
///
/// Multi-controlled gates run as pattern-matched kernels that visit only
/// the amplitudes whose control bits match, so their cost shrinks by half
/// with every added control.
#[derive(Clone, PartialEq)]
pub struct StateVector<T: Real = f64> {
    num_qubits: usize,
    amplitudes: Vec<Complex<T>>,
}

impl<T: Real> fmt::Debug for StateVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("StateVector")
            .field("num_qubits", &self.num_qubits)
            .field("len", &self.amplitudes.len())
            .finish()
    }
}

impl<T: Real> StateVector<T> {
    /// Basis state `|basis_value⟩` under the default capacity limit.
    pub fn new(num_qubits: usize, basis_value: u64) -> Result<Self> {
        Self::with_limit(num_qubits, basis_value, DEFAULT_MAX_QUBITS)
    }

    pub fn with_limit(num_qubits: usize, basis_value: u64, max_qubits: usize) -> Result<Self> {
        let limit = max_qubits.min(HARD_MAX_QUBITS);
        if num_qubits > limit {
            return Err(Error::Capacity {
                requested: num_qubits,
                limit,
            });
        }
        let len = 1usize << num_qubits;
        if basis_value >= len as u64 {
            return Err(Error::BasisOutOfRange {
                value: basis_value,
                num_qubits,
            });
        }
        let mut amplitudes = vec![Complex::new(T::zero(), T::zero()); len];
        amplitudes[basis_value as usize] = Complex::new(T::one(), T::zero());
        Ok(StateVector { num_qubits, amplitudes })
    }

    /// Wraps an explicit amplitude array; its length must be a power of two.
    pub fn from_amplitudes(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let len = amplitudes.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(Error::InvalidParams(format!(
                "amplitude array length {len} is not a power of two"
            )));
        }
        Ok(StateVector {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn amplitude(&self, basis: usize) -> Complex<T> {
        self.amplitudes[basis]
    }

    pub fn probability(&self, basis: usize) -> f64 {
        self.amplitudes[basis].norm_sqr().to_f64()
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr().to_f64())
            .sum::<f64>()
            .sqrt()
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.num_qubits)?;
        self.apply_unchecked(gate);
        Ok(())
    }

    pub fn apply_gates(&mut self, gates: &[Gate]) -> Result<()> {
        for g in gates {
            self.apply_gate(g)?;
        }
        Ok(())
    }

    /// Applies the gates in order. The circuit may be narrower than the
    /// state; its qubits map onto the low qubits of the state.
    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.num_qubits > self.num_qubits {
            return Err(Error::QubitOutOfRange {
                qubit: circuit.num_qubits - 1,
                num_qubits: self.num_qubits,
            });
        }
        self.apply_gates(&circuit.gates)
    }

    fn apply_unchecked(&mut self, gate: &Gate) {
        match gate.kind {
            GateKind::H => self.hadamard(gate.targets[0].mask()),
            GateKind::X => self.controlled_x(0, 0, gate.targets[0].mask()),
            GateKind::Z => self.controlled_phase(gate.targets[0].mask(), gate.targets[0].mask()),
            GateKind::Swap => self.swap(gate.targets[0].mask(), gate.targets[1].mask()),
            GateKind::Mcx => {
                let (mask, value) = gate.control_pattern();
                self.controlled_x(mask, value, gate.targets[0].mask());
            }
            GateKind::Mcz => {
                let (mask, value) = gate.control_pattern();
                self.controlled_phase(mask, value);
            }
        }
    }

    fn all_bits(&self) -> usize {
        self.amplitudes.len() - 1
    }

    fn hadamard(&mut self, t: usize) {
        let s = T::FRAC_1_SQRT_2();
        let len = self.amplitudes.len();
        let mut base = 0;
        while base < len {
            for i in base..base + t {
                let a = self.amplitudes[i];
                let b = self.amplitudes[i + t];
                self.amplitudes[i] = (a + b) * s;
                self.amplitudes[i + t] = (a - b) * s;
            }
            base += 2 * t;
        }
    }

    fn controlled_x(&mut self, mask: usize, value: usize, t: usize) {
        let free = self.all_bits() & !(mask | t);
        for_each_subset(free, |s| {
            let i = s | value;
            self.amplitudes.swap(i, i | t);
        });
    }

    fn controlled_phase(&mut self, mask: usize, value: usize) {
        let free = self.all_bits() & !mask;
        for_each_subset(free, |s| {
            let i = s | value;
            self.amplitudes[i] = -self.amplitudes[i];
        });
    }

    fn swap(&mut self, a: usize, b: usize) {
        let free = self.all_bits() & !(a | b);
        for_each_subset(free, |s| {
            self.amplitudes.swap(s | a, s | b);
        });
    }

    /// Probability of each value of `register`, summed over all other qubits.
    /// Only values with nonzero probability appear.
    pub fn marginal_distribution(&self, register: &Register) -> Result<BTreeMap<u64, f64>> {
        for q in &register.qubits {
            if q.0 >= self.num_qubits {
                return Err(Error::QubitOutOfRange {
                    qubit: q.0,
                    num_qubits: self.num_qubits,
                });
            }
        }
        let mut out = BTreeMap::new();
        if register.width() <= 20 {
            let mut dense = vec![0.0f64; 1 << register.width()];
            for (i, a) in self.amplitudes.iter().enumerate() {
                let p = a.norm_sqr().to_f64();
                if p != 0.0 {
                    dense[register.extract(i) as usize] += p;
                }
            }
            for (v, p) in dense.into_iter().enumerate() {
                if p != 0.0 {
                    out.insert(v as u64, p);
                }
            }
        } else {
            for (i, a) in self.amplitudes.iter().enumerate() {
                let p = a.norm_sqr().to_f64();
                if p != 0.0 {
                    *out.entry(register.extract(i)).or_insert(0.0) += p;
                }
            }
        }
        Ok(out)
    }

    /// Probability that `register` reads exactly `value`.
    pub fn register_probability(&self, register: &Register, value: u64) -> Result<f64> {
        Ok(self
            .marginal_distribution(register)?
            .get(&value)
            .copied()
            .unwrap_or(0.0))
    }

    /// Draws `shots` measurements of `register`. Reproducible for a fixed seed.
    pub fn sample(&self, register: &Register, shots: u64, seed: u64) -> Result<BTreeMap<u64, u64>> {
        if shots == 0 {
            return Err(Error::InvalidParams("shots must be at least 1".into()));
        }
        let dist = self.marginal_distribution(register)?;
        let values: Vec<u64> = dist.keys().copied().collect();
        let weights: Vec<f64> = dist.values().copied().collect();
        let index =
            WeightedIndex::new(&weights).map_err(|e| Error::Invariant(format!("cannot sample distribution: {e}")))?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = BTreeMap::new();
        for _ in 0..shots {
            *counts.entry(values[index.sample(&mut rng)]).or_insert(0) += 1;
        }
        Ok(counts)
    }
}

/// Calls `f` for every subset of the bits in `free`, in increasing order.
#[inline]
fn for_each_subset(free: usize, mut f: impl FnMut(usize)) {
    let mut s = 0usize;
    loop {
        f(s);
        if s == free {
            break;
        }
        s = ((s | !free).wrapping_add(1)) & free;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sim::{Control, QubitIndex};

    fn amps(s: &StateVector) -> Vec<(f64, f64)> {
        s.amplitudes().iter().map(|a| (a.re, a.im)).collect()
    }

    #[test]
    fn basis_states() {
        assert_eq!(amps(&StateVector::new(1, 0).unwrap()), vec![(1.0, 0.0), (0.0, 0.0)]);
        let s = StateVector::<f64>::new(2, 3).unwrap();
        assert_eq!(s.probability(3), 1.0);
        assert_eq!(s.amplitudes().len(), 4);
        let s = StateVector::<f64>::new(3, 5).unwrap();
        assert_eq!(s.probability(5), 1.0);
        assert!((s.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn capacity_and_range_errors() {
        assert!(matches!(
            StateVector::<f64>::new(27, 0),
            Err(Error::Capacity {
                requested: 27,
                limit: 26
            })
        ));
        assert!(matches!(
            StateVector::<f64>::with_limit(5, 0, 4),
            Err(Error::Capacity { requested: 5, limit: 4 })
        ));
        assert!(matches!(
            StateVector::<f64>::new(2, 4),
            Err(Error::BasisOutOfRange { .. })
        ));
    }

    #[test]
    fn hadamard_on_zero() {
        let mut s = StateVector::<f64>::new(1, 0).unwrap();
        s.apply_gate(&Gate::h(0)).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((s.amplitude(0).re - r).abs() < 1e-15);
        assert!((s.amplitude(1).re - r).abs() < 1e-15);
    }

    #[test]
    fn mcx_with_negative_control() {
        // controls +q0, -q1; target q2; |001> -> |101>
        let mut s = StateVector::<f64>::new(3, 0b001).unwrap();
        s.apply_gate(&Gate::mcx(vec![Control::pos(0), Control::neg(1)], 2))
            .unwrap();
        assert_eq!(s.probability(0b101), 1.0);
        // pattern not matched: |011> stays
        let mut s = StateVector::<f64>::new(3, 0b011).unwrap();
        s.apply_gate(&Gate::mcx(vec![Control::pos(0), Control::neg(1)], 2))
            .unwrap();
        assert_eq!(s.probability(0b011), 1.0);
    }

    #[test]
    fn mcz_negates_only_matching_pattern() {
        let mut s = StateVector::<f64>::new(3, 0).unwrap();
        for q in 0..3 {
            s.apply_gate(&Gate::h(q)).unwrap();
        }
        let before = s.clone();
        s.apply_gate(&Gate::mcz(vec![Control::pos(0), Control::neg(1), Control::pos(2)]))
            .unwrap();
        for i in 0..8 {
            let expected = if i == 0b101 {
                -before.amplitude(i)
            } else {
                before.amplitude(i)
            };
            assert_eq!(s.amplitude(i), expected);
        }
    }

    #[test]
    fn swap_and_z() {
        let mut s = StateVector::<f64>::new(3, 0b010).unwrap();
        s.apply_gate(&Gate::swap(1, 2)).unwrap();
        assert_eq!(s.probability(0b100), 1.0);
        s.apply_gate(&Gate::z(2)).unwrap();
        assert_eq!(s.amplitude(0b100).re, -1.0);
    }

    #[test]
    fn empty_and_self_inverse_circuits() {
        let mut s = StateVector::<f64>::new(2, 1).unwrap();
        s.apply_circuit(&Circuit::new(2)).unwrap();
        assert_eq!(s.probability(1), 1.0);

        let mut s = StateVector::<f64>::new(1, 0).unwrap();
        s.apply_circuit(&Circuit::with_gates(1, vec![Gate::h(0), Gate::h(0)]))
            .unwrap();
        assert!((s.amplitude(0).re - 1.0).abs() < 1e-12);
        assert!(s.amplitude(1).norm() < 1e-12);
    }

    #[test]
    fn gate_errors_surface() {
        let mut s = StateVector::<f64>::new(2, 0).unwrap();
        assert!(matches!(s.apply_gate(&Gate::x(2)), Err(Error::QubitOutOfRange { .. })));
        assert!(matches!(
            s.apply_gate(&Gate::cx(0, 0)),
            Err(Error::OverlappingQubits(0))
        ));
        assert!(s.apply_circuit(&Circuit::new(3)).is_err());
    }

    #[test]
    fn marginals() {
        let mut s = StateVector::<f64>::new(2, 0).unwrap();
        s.apply_gates(&[Gate::h(0), Gate::h(1)]).unwrap();
        let full = Register::contiguous("r", 0, 2);
        let d = s.marginal_distribution(&full).unwrap();
        assert_eq!(d.len(), 4);
        for p in d.values() {
            assert!((p - 0.25).abs() < 1e-12);
        }

        let s = StateVector::<f64>::new(3, 0b101).unwrap();
        let q0 = Register::new("q0", vec![QubitIndex(0)]);
        let d = s.marginal_distribution(&q0).unwrap();
        assert_eq!(d.into_iter().collect::<Vec<_>>(), vec![(1, 1.0)]);
        let bad = Register::new("bad", vec![QubitIndex(3)]);
        assert!(s.marginal_distribution(&bad).is_err());
    }

    #[test]
    fn sampling_is_seeded() {
        let s = StateVector::<f64>::new(3, 5).unwrap();
        let r = Register::contiguous("r", 0, 3);
        let c = s.sample(&r, 100, 7).unwrap();
        assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![(5, 100)]);

        let mut s = StateVector::<f64>::new(1, 0).unwrap();
        s.apply_gate(&Gate::h(0)).unwrap();
        let r = Register::contiguous("r", 0, 1);
        let shots = 1_000_000u64;
        let a = s.sample(&r, shots, 42).unwrap();
        assert_eq!(a, s.sample(&r, shots, 42).unwrap());
        // binomial sigma = sqrt(n p (1-p)) = 500
        let zeros = a.get(&0).copied().unwrap_or(0) as f64;
        assert!((zeros - 500_000.0).abs() <= 5.0 * 500.0, "zeros = {zeros}");
        assert!(s.sample(&r, 0, 1).is_err());
    }

    #[test]
    fn single_precision_runs() {
        let mut s = StateVector::<f32>::new(2, 0).unwrap();
        s.apply_gates(&[Gate::h(0), Gate::h(1)]).unwrap();
        assert!((s.norm() - 1.0).abs() < 1e-6);
    }
}
