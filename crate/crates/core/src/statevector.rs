// Copyright 2026 The binopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Exact statevector simulation of a work register plus one ancilla.
//!
//! Qubit 0 of the combined register is the ancilla and work qubit `j` is
//! qubit `j + 1`, so `|x⟩ ⊗ |a⟩` is stored at amplitude index `2x + a`.

use std::f64::consts::FRAC_1_SQRT_2;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Largest simulated work register.
pub const MAX_WORK_QUBITS: usize = 26;

/// Combined-register index of the ancilla.
pub const ANCILLA: usize = 0;

/// Generator used for every seeded measurement.
pub const RNG_NAME: &str = "ChaCha8Rng";

/// Circuits whose application moves the norm further than this are rejected.
pub const NORM_DRIFT_LIMIT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RegisterLayout {
    work_qubits: usize,
}

impl RegisterLayout {
    pub fn new(work_qubits: usize) -> Result<Self> {
        if work_qubits == 0 || work_qubits > MAX_WORK_QUBITS {
            return Err(Error::InvalidLayout(work_qubits));
        }
        Ok(Self { work_qubits })
    }

    pub fn work_qubits(&self) -> usize {
        self.work_qubits
    }

    pub fn total_qubits(&self) -> usize {
        self.work_qubits + 1
    }

    pub fn dim(&self) -> usize {
        1 << self.total_qubits()
    }

    /// Combined-register qubit holding work bit `j`.
    pub fn work_qubit(&self, j: usize) -> usize {
        j + 1
    }

    pub fn index(&self, x: u64, a: u8) -> usize {
        ((x as usize) << 1) | (a as usize & 1)
    }

    pub fn split(&self, index: usize) -> (u64, u8) {
        ((index >> 1) as u64, (index & 1) as u8)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Gate {
    X(usize),
    /// `P(α) = |0⟩⟨0| + e^{iα}|1⟩⟨1|`.
    P(usize, f64),
    Cnot {
        control: usize,
        target: usize,
    },
    H(usize),
}

impl Gate {
    pub fn validate(&self, qubits: usize) -> Result<()> {
        let ok = match *self {
            Gate::X(q) | Gate::H(q) => q < qubits,
            Gate::P(q, alpha) => q < qubits && alpha.is_finite(),
            Gate::Cnot { control, target } => {
                control < qubits && target < qubits && control != target
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidGate {
                gate: self.to_string(),
                qubits,
            })
        }
    }

    /// The same gate with its phase negated; X, CNOT and H are unchanged.
    pub fn conjugated(&self) -> Gate {
        match *self {
            Gate::P(q, alpha) => Gate::P(q, -alpha),
            other => other,
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::X(q) => write!(f, "X {q}"),
            Gate::P(q, alpha) => write!(f, "P {q} {alpha:.16e}"),
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            Gate::H(q) => write!(f, "H {q}"),
        }
    }
}

/// Ordered gate list, applied first to last.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    layout: RegisterLayout,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(layout: RegisterLayout) -> Self {
        Self {
            layout,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(layout: RegisterLayout, gates: Vec<Gate>) -> Result<Self> {
        for g in &gates {
            g.validate(layout.total_qubits())?;
        }
        Ok(Self { layout, gates })
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.layout.total_qubits())?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn append(&mut self, other: &Circuit) -> Result<()> {
        check_layout(self.layout, other.layout)?;
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// The gate list in reverse order. This is the inverse for circuits made
    /// only of self-inverse gates (X, CNOT, H).
    pub fn reversed(&self) -> Circuit {
        Circuit {
            layout: self.layout,
            gates: self.gates.iter().rev().copied().collect(),
        }
    }
}

fn check_layout(left: RegisterLayout, right: RegisterLayout) -> Result<()> {
    if left != right {
        return Err(Error::LayoutMismatch {
            left: left.work_qubits,
            right: right.work_qubits,
        });
    }
    Ok(())
}

/// `H` on every qubit of the combined register.
pub fn hadamard_all(layout: RegisterLayout) -> Circuit {
    Circuit {
        layout,
        gates: (0..layout.total_qubits()).map(Gate::H).collect(),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    layout: RegisterLayout,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// `|0⟩^{n+1}`.
    pub fn zero(layout: RegisterLayout) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); layout.dim()];
        amps[0] = Complex64::new(1.0, 0.0);
        Self { layout, amps }
    }

    /// Wraps the given amplitudes after normalizing them.
    pub fn from_amplitudes(layout: RegisterLayout, mut amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != layout.dim() {
            return Err(Error::TableLength {
                expected: layout.dim(),
                got: amps.len(),
            });
        }
        let norm = amps.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroNorm);
        }
        for a in &mut amps {
            *a /= norm;
        }
        Ok(Self { layout, amps })
    }

    /// A normalized state whose components are drawn uniformly from the unit square.
    pub fn random<R: Rng>(layout: RegisterLayout, rng: &mut R) -> Self {
        let amps = (0..layout.dim())
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        Self::from_amplitudes(layout, amps).expect("random state has nonzero norm")
    }

    pub fn layout(&self) -> RegisterLayout {
        self.layout
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(Complex64::norm_sqr).sum()
    }

    /// Largest per-amplitude distance to `other`.
    pub fn max_deviation(&self, other: &StateVector) -> f64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        gate.validate(self.layout.total_qubits())?;
        match *gate {
            Gate::X(q) => {
                let bit = 1 << q;
                for i in (0..self.amps.len()).filter(|i| i & bit == 0) {
                    self.amps.swap(i, i | bit);
                }
            }
            Gate::P(q, alpha) => {
                let bit = 1 << q;
                let phase = Complex64::from_polar(1.0, alpha);
                for (i, a) in self.amps.iter_mut().enumerate() {
                    if i & bit != 0 {
                        *a *= phase;
                    }
                }
            }
            Gate::Cnot { control, target } => {
                let (c, t) = (1 << control, 1 << target);
                for i in (0..self.amps.len()).filter(|i| i & c != 0 && i & t == 0) {
                    self.amps.swap(i, i | t);
                }
            }
            Gate::H(q) => {
                let bit = 1 << q;
                for i in (0..self.amps.len()).filter(|i| i & bit == 0) {
                    let (a, b) = (self.amps[i], self.amps[i | bit]);
                    self.amps[i] = (a + b) * FRAC_1_SQRT_2;
                    self.amps[i | bit] = (a - b) * FRAC_1_SQRT_2;
                }
            }
        }
        Ok(())
    }

    /// Applies every gate in order, then checks that the norm did not drift.
    pub fn apply_circuit(&mut self, circuit: &Circuit) -> Result<()> {
        check_layout(self.layout, circuit.layout)?;
        let before = self.norm_sqr();
        for g in &circuit.gates {
            self.apply_gate(g)?;
        }
        let after = self.norm_sqr();
        if (after - before).abs() > NORM_DRIFT_LIMIT {
            return Err(Error::NormDrift(after));
        }
        Ok(())
    }

    /// `p(x) = |amp(2x)|² + |amp(2x+1)|²`.
    pub fn work_probabilities(&self) -> Vec<f64> {
        self.amps
            .chunks_exact(2)
            .map(|pair| pair[0].norm_sqr() + pair[1].norm_sqr())
            .collect()
    }

    /// Probability of reading `a` on the ancilla.
    pub fn ancilla_probability(&self, a: u8) -> f64 {
        self.amps
            .iter()
            .skip(a as usize & 1)
            .step_by(2)
            .map(Complex64::norm_sqr)
            .sum()
    }

    /// Work-register distribution conditioned on ancilla outcome `a`.
    pub fn conditional_work_distribution(&self, a: u8) -> Result<Vec<f64>> {
        let total = self.ancilla_probability(a);
        if total == 0.0 {
            return Err(Error::ZeroNorm);
        }
        Ok(self
            .amps
            .iter()
            .skip(a as usize & 1)
            .step_by(2)
            .map(|z| z.norm_sqr() / total)
            .collect())
    }

    /// `max_x |amp(2x+1) - conj(amp(2x))|`.
    pub fn conjugate_symmetry_gap(&self) -> f64 {
        self.amps
            .chunks_exact(2)
            .map(|pair| (pair[1] - pair[0].conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Projective measurement of one qubit in the computational basis.
    pub fn measure_qubit<R: Rng>(&self, qubit: usize, rng: &mut R) -> Result<(u8, StateVector)> {
        if qubit >= self.layout.total_qubits() {
            return Err(Error::InvalidGate {
                gate: format!("measure {qubit}"),
                qubits: self.layout.total_qubits(),
            });
        }
        let bit = 1 << qubit;
        let total = self.norm_sqr();
        if total == 0.0 {
            return Err(Error::ZeroNorm);
        }
        let p_zero: f64 = self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| i & bit == 0)
            .map(|(_, z)| z.norm_sqr())
            .sum::<f64>()
            / total;
        let outcome = if rng.gen::<f64>() < p_zero { 0u8 } else { 1 };
        let keep = if outcome == 0 { p_zero } else { 1.0 - p_zero };
        let scale = 1.0 / (keep * total).sqrt();
        let amps = self
            .amps
            .iter()
            .enumerate()
            .map(|(i, &z)| {
                if ((i & bit != 0) as u8) == outcome {
                    z * scale
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Ok((
            outcome,
            StateVector {
                layout: self.layout,
                amps,
            },
        ))
    }

    /// [`measure_qubit`](Self::measure_qubit) with a fresh [`RNG_NAME`] generator.
    pub fn measure_qubit_seeded(&self, qubit: usize, seed: u64) -> Result<(u8, StateVector)> {
        self.measure_qubit(qubit, &mut ChaCha8Rng::seed_from_u64(seed))
    }
}
