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

//! Non-Boolean amplitude amplification and extremum search.
//!
//! Starting from `Ψ₀ = H^{⊗(n+1)}|0⟩`, iteration `j` applies `U_f†` (even `j`)
//! or `U_f` (odd `j`) followed by the reflection `S_{Ψ₀} = 2|Ψ₀⟩⟨Ψ₀| - 1`.
//! After `K` iterations the work-register distribution obeys
//!
//! ```text
//! p_K(x) = p₀(x) (1 + λ_K(θ) (cos θ - cos f(x))),
//! λ_K(θ) = (cos θ - cos((2K+1)θ)) / sin²θ,   cos θ = Σ_x p₀(x) cos f(x).
//! ```
//!
//! To find extrema of an objective `F` with bounds `f₋ ≤ F ≤ f₊`, `F` is mapped
//! affinely into `[0, scale]` so that its minimizers (direction [`Direction::Plus`])
//! or maximizers ([`Direction::Minus`]) become the points of largest `f`, which
//! are the ones amplified most.
//!
//! The default scale is π/4. Larger scales raise `θ` and lower `λ`; smaller ones
//! do the opposite, and the two effects roughly cancel in `p_K`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::fourier::{FourierSpectrum, FunctionTable};
use crate::oracle::{build_u_f, build_u_f_dagger, reference_oracle_apply, OracleSign};
use crate::statevector::{Circuit, RegisterLayout, StateVector, ANCILLA, RNG_NAME};
use crate::{Error, Result};

pub const DEFAULT_SCALE: f64 = FRAC_PI_4;
pub const DEFAULT_ITERATION_CAP: usize = 1_000_000;

/// `θ` closer than this to 0 or π is treated as degenerate.
pub const MIN_THETA: f64 = 1e-6;

const PROBABILITY_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `f₊(x) = (f₊ - F(x)) / (f₊ - f₋) · scale`; largest where `F` is smallest.
    Plus,
    /// `f₋(x) = (F(x) - f₋) / (f₊ - f₋) · scale`; largest where `F` is largest.
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Extremum {
    Min,
    Max,
}

impl Extremum {
    pub fn direction(self) -> Direction {
        match self {
            Extremum::Min => Direction::Plus,
            Extremum::Max => Direction::Minus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ObjectiveBounds {
    pub lower: f64,
    pub upper: f64,
}

impl ObjectiveBounds {
    pub fn new(lower: f64, upper: f64) -> Result<Self> {
        if !(lower.is_finite() && upper.is_finite() && lower < upper) {
            return Err(Error::DegenerateObjective { lower, upper });
        }
        Ok(Self { lower, upper })
    }

    /// Exact bounds of a table.
    pub fn of_table(table: &FunctionTable) -> Result<Self> {
        Self::new(table.min(), table.max())
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

fn check_scale(scale: f64) -> Result<()> {
    if scale.is_finite() && scale > 0.0 && scale <= FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::InvalidScale(scale))
    }
}

/// Pointwise `f_±(x)` for a single objective value.
pub fn scale_value(value: f64, bounds: ObjectiveBounds, direction: Direction, scale: f64) -> f64 {
    let offset = match direction {
        Direction::Plus => bounds.upper - value,
        Direction::Minus => value - bounds.lower,
    };
    offset / bounds.width() * scale
}

/// An objective `F` together with its rescaled phase function `f_±`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledObjective {
    base: FourierSpectrum,
    base_values: FunctionTable,
    bounds: ObjectiveBounds,
    direction: Direction,
    scale: f64,
    spectrum: FourierSpectrum,
    values: FunctionTable,
}

impl ScaledObjective {
    pub fn base(&self) -> &FourierSpectrum {
        &self.base
    }

    /// `F(x)` for every `x`.
    pub fn base_values(&self) -> &FunctionTable {
        &self.base_values
    }

    pub fn bounds(&self) -> ObjectiveBounds {
        self.bounds
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Spectrum of `f_±`.
    pub fn spectrum(&self) -> &FourierSpectrum {
        &self.spectrum
    }

    /// `f_±(x)` for every `x`.
    pub fn values(&self) -> &FunctionTable {
        &self.values
    }

    pub fn width(&self) -> usize {
        self.base.width()
    }
}

/// Rescales `F` (given by its spectrum) into `[0, scale]`.
///
/// The map is affine, so only the constant coefficient shifts and every other
/// coefficient is multiplied by `∓scale / (f₊ - f₋)`.
pub fn scale_objective(
    base: &FourierSpectrum,
    bounds: ObjectiveBounds,
    direction: Direction,
    scale: f64,
) -> Result<ScaledObjective> {
    check_scale(scale)?;
    let bounds = ObjectiveBounds::new(bounds.lower, bounds.upper)?;
    let k = scale / bounds.width();
    let constant = base.coefficient(0);
    let (shift, factor) = match direction {
        Direction::Plus => (k * (bounds.upper - constant), -k),
        Direction::Minus => (k * (constant - bounds.lower), k),
    };
    let spectrum = FourierSpectrum::from_pairs(
        base.width(),
        base.iter()
            .filter(|(s, _)| !s.is_empty())
            .map(|(s, c)| (s.mask(), factor * c))
            .chain(std::iter::once((0, shift))),
    )?;

    let base_values = base.to_table();
    let slack = 1e-9 * bounds.width().max(1.0);
    if base_values.min() < bounds.lower - slack || base_values.max() > bounds.upper + slack {
        return Err(Error::InvalidConfig(format!(
            "bounds [{}, {}] do not enclose the objective range [{}, {}]",
            bounds.lower,
            bounds.upper,
            base_values.min(),
            base_values.max()
        )));
    }
    let values = spectrum.to_table();
    Ok(ScaledObjective {
        base: base.clone(),
        base_values,
        bounds,
        direction,
        scale,
        spectrum,
        values,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Iterations {
    /// `K̃ = ⌊π/(2θ)⌋`, capped by the iteration cap.
    Auto,
    Fixed(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SamplingMode {
    /// Report Born probabilities.
    Exact,
    /// Measure the ancilla, then sample the work register `shots` times.
    Sampled { shots: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OracleKind {
    /// Synthesized gate-level `U_f`.
    Circuit,
    /// Direct diagonal phase multiplication.
    Diagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AAConfig {
    pub iterations: Iterations,
    pub iteration_cap: usize,
    pub mode: SamplingMode,
    pub scale: f64,
}

impl Default for AAConfig {
    fn default() -> Self {
        Self {
            iterations: Iterations::Auto,
            iteration_cap: DEFAULT_ITERATION_CAP,
            mode: SamplingMode::Exact,
            scale: DEFAULT_SCALE,
        }
    }
}

impl AAConfig {
    pub fn validate(&self) -> Result<()> {
        if self.iteration_cap == 0 {
            return Err(Error::InvalidConfig(
                "iteration cap must be at least 1".into(),
            ));
        }
        if let SamplingMode::Sampled { shots: 0, .. } = self.mode {
            return Err(Error::InvalidConfig(
                "sampled mode needs at least one shot".into(),
            ));
        }
        check_scale(self.scale)
    }
}

/// `Ψ₀ = |ψ₀⟩ ⊗ |+⟩` with `a₀(x) = 2^{-n/2}`: every amplitude is `2^{-(n+1)/2}`.
pub fn prepare_initial(layout: RegisterLayout) -> StateVector {
    let amp = (layout.dim() as f64).sqrt().recip();
    let amps = vec![num_complex::Complex64::new(amp, 0.0); layout.dim()];
    StateVector::from_amplitudes(layout, amps).expect("uniform state is normalizable")
}

fn check_distribution(p: &[f64]) -> Result<()> {
    let total: f64 = p.iter().sum();
    if (total - 1.0).abs() > PROBABILITY_SUM_TOLERANCE {
        return Err(Error::InvalidConfig(format!(
            "probabilities sum to {total}, not 1"
        )));
    }
    Ok(())
}

/// `θ = arccos(Σ_x p₀(x) cos f(x))`.
pub fn compute_theta(f: &FunctionTable, p0: &[f64]) -> Result<f64> {
    if p0.len() != f.values().len() {
        return Err(Error::TableLength {
            expected: f.values().len(),
            got: p0.len(),
        });
    }
    check_distribution(p0)?;
    let c: f64 = p0.iter().zip(f.values()).map(|(p, v)| p * v.cos()).sum();
    if c.abs() > 1.0 + 1e-12 {
        return Err(Error::ThetaDomain(c));
    }
    Ok(c.clamp(-1.0, 1.0).acos())
}

fn check_theta(theta: f64) -> Result<()> {
    if !theta.is_finite() || theta < MIN_THETA || PI - theta < MIN_THETA {
        return Err(Error::DegenerateTheta(theta));
    }
    Ok(())
}

/// `λ_K(θ) = (cos θ - cos((2K+1)θ)) / sin²θ`.
pub fn lambda_k(theta: f64, k: usize) -> Result<f64> {
    check_theta(theta)?;
    let s = theta.sin();
    Ok((theta.cos() - ((2 * k + 1) as f64 * theta).cos()) / (s * s))
}

/// `λ_opt(θ) = 1 / (1 - cos θ)`, the upper bound of `λ_K(θ)` over `K`.
pub fn lambda_opt(theta: f64) -> Result<f64> {
    check_theta(theta)?;
    Ok(1.0 / (1.0 - theta.cos()))
}

/// `K̃ = ⌊π / (2θ)⌋`.
pub fn optimal_iterations(theta: f64) -> Result<usize> {
    check_theta(theta)?;
    Ok((PI / (2.0 * theta)).floor() as usize)
}

/// `ψ ↦ 2⟨Ψ₀|ψ⟩Ψ₀ - ψ` for the uniform `Ψ₀`.
pub fn reflect_about_initial(state: &mut StateVector) {
    let amps = state.amplitudes_mut();
    let mean = amps.iter().sum::<num_complex::Complex64>() / amps.len() as f64;
    for a in amps.iter_mut() {
        *a = 2.0 * mean - *a;
    }
}

/// `p_K(x) = p₀(x) (1 + λ_K(θ)(cos θ - cos f(x)))`.
pub fn predicted_probabilities(
    f: &FunctionTable,
    theta: f64,
    k: usize,
    p0: &[f64],
) -> Result<Vec<f64>> {
    let lambda = lambda_k(theta, k)?;
    let cos_theta = theta.cos();
    Ok(p0
        .iter()
        .zip(f.values())
        .map(|(p, v)| p * (1.0 + lambda * (cos_theta - v.cos())))
        .collect())
}

/// Ancilla statistics of the state after a given number of iterations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IterationDiagnostics {
    pub iteration: usize,
    pub ancilla_zero_probability: f64,
    /// `max_x |p(x | a=0) - p(x | a=1)|`.
    pub conditional_gap: f64,
    pub conjugate_symmetry_gap: f64,
    pub norm: f64,
}

impl IterationDiagnostics {
    fn of(iteration: usize, state: &StateVector) -> Result<Self> {
        let zero = state.conditional_work_distribution(0)?;
        let one = state.conditional_work_distribution(1)?;
        let conditional_gap = zero
            .iter()
            .zip(&one)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        Ok(Self {
            iteration,
            ancilla_zero_probability: state.ancilla_probability(0),
            conditional_gap,
            conjugate_symmetry_gap: state.conjugate_symmetry_gap(),
            norm: state.norm_sqr().sqrt(),
        })
    }
}

enum Oracle<'a> {
    Circuit { forward: Circuit, adjoint: Circuit },
    Diagonal(&'a FunctionTable),
}

impl Oracle<'_> {
    fn apply(&self, state: &mut StateVector, sign: OracleSign) -> Result<()> {
        match (self, sign) {
            (Oracle::Circuit { forward, .. }, OracleSign::Forward) => state.apply_circuit(forward),
            (Oracle::Circuit { adjoint, .. }, OracleSign::Adjoint) => state.apply_circuit(adjoint),
            (Oracle::Diagonal(table), _) => reference_oracle_apply(table, state, sign),
        }
    }
}

/// Runs `k` iterations from `Ψ₀` and returns the final state together with
/// diagnostics for iterations `0..=k`.
pub fn evolve(
    objective: &ScaledObjective,
    k: usize,
    oracle: OracleKind,
) -> Result<(StateVector, Vec<IterationDiagnostics>)> {
    let layout = RegisterLayout::new(objective.width())?;
    let oracle = match oracle {
        OracleKind::Circuit => Oracle::Circuit {
            forward: build_u_f(&objective.spectrum, layout)?.circuit,
            adjoint: build_u_f_dagger(&objective.spectrum, layout)?.circuit,
        },
        OracleKind::Diagonal => Oracle::Diagonal(&objective.values),
    };
    let mut state = prepare_initial(layout);
    let mut trace = Vec::with_capacity(k + 1);
    trace.push(IterationDiagnostics::of(0, &state)?);
    for j in 0..k {
        let sign = if j % 2 == 0 {
            OracleSign::Adjoint
        } else {
            OracleSign::Forward
        };
        oracle.apply(&mut state, sign)?;
        reflect_about_initial(&mut state);
        trace.push(IterationDiagnostics::of(j + 1, &state)?);
    }
    Ok((state, trace))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Candidate {
    pub x: u64,
    /// Most-significant-bit-first rendering of `x`.
    pub bits: String,
    /// `F(x)`.
    pub value: f64,
    /// `f_±(x)`.
    pub scaled: f64,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub mode: SamplingMode,
    pub rng: Option<String>,
    pub oracle: OracleKind,
    pub oracle_gate_count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AARunReport {
    pub n: usize,
    pub direction: Direction,
    pub scale: f64,
    pub bounds: ObjectiveBounds,
    pub theta: f64,
    /// `⌊π/(2θ)⌋` before capping.
    pub optimal_iterations: usize,
    pub iterations: usize,
    pub lambda_k: f64,
    pub lambda_opt: f64,
    pub p0: Vec<f64>,
    pub pk: Vec<f64>,
    pub predicted_pk: Vec<f64>,
    pub ancilla_outcome: Option<u8>,
    /// All `x`, by `pk` descending then `x` ascending.
    pub ranked: Vec<Candidate>,
    pub trace: Vec<IterationDiagnostics>,
    pub provenance: Provenance,
    pub warnings: Vec<String>,
}

impl AARunReport {
    pub fn best(&self) -> &Candidate {
        &self.ranked[0]
    }
}

fn rank(objective: &ScaledObjective, pk: &[f64]) -> Vec<Candidate> {
    let n = objective.width();
    let mut ranked: Vec<Candidate> = pk
        .iter()
        .enumerate()
        .map(|(x, &probability)| Candidate {
            x: x as u64,
            bits: crate::fourier::format_binary(x as u64, n),
            value: objective.base_values.get(x as u64),
            scaled: objective.values.get(x as u64),
            probability,
        })
        .collect();
    ranked.sort_by(|a, b| b.probability.total_cmp(&a.probability).then(a.x.cmp(&b.x)));
    ranked
}

/// Non-Boolean amplitude amplification of `f_±`.
pub fn run(objective: &ScaledObjective, cfg: &AAConfig, oracle: OracleKind) -> Result<AARunReport> {
    cfg.validate()?;
    let layout = RegisterLayout::new(objective.width())?;
    let p0 = prepare_initial(layout).work_probabilities();
    let theta = compute_theta(&objective.values, &p0)?;
    let k_tilde = optimal_iterations(theta)?;
    let mut warnings = Vec::new();
    let k = match cfg.iterations {
        Iterations::Auto if k_tilde > cfg.iteration_cap => {
            warnings.push(format!(
                "optimal iteration count {k_tilde} capped at {}",
                cfg.iteration_cap
            ));
            cfg.iteration_cap
        }
        Iterations::Auto => k_tilde,
        Iterations::Fixed(k) if k > cfg.iteration_cap => {
            return Err(Error::IterationCap {
                requested: k,
                cap: cfg.iteration_cap,
            })
        }
        Iterations::Fixed(k) => k,
    };

    let (state, trace) = evolve(objective, k, oracle)?;
    let predicted_pk = predicted_probabilities(&objective.values, theta, k, &p0)?;

    let (pk, ancilla_outcome, rng) = match cfg.mode {
        SamplingMode::Exact => (state.work_probabilities(), None, None),
        SamplingMode::Sampled { shots, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (outcome, collapsed) = state.measure_qubit(ANCILLA, &mut rng)?;
            let weights = collapsed.work_probabilities();
            let dist = WeightedIndex::new(&weights)
                .map_err(|e| Error::InvalidConfig(format!("cannot sample work register: {e}")))?;
            let mut counts = vec![0usize; weights.len()];
            for _ in 0..shots {
                counts[dist.sample(&mut rng)] += 1;
            }
            let pk = counts.iter().map(|&c| c as f64 / shots as f64).collect();
            (pk, Some(outcome), Some(RNG_NAME.to_string()))
        }
    };

    let oracle_gate_count = match oracle {
        OracleKind::Circuit => Some(build_u_f(&objective.spectrum, layout)?.gate_count()),
        OracleKind::Diagonal => None,
    };

    Ok(AARunReport {
        n: objective.width(),
        direction: objective.direction,
        scale: objective.scale,
        bounds: objective.bounds,
        theta,
        optimal_iterations: k_tilde,
        iterations: k,
        lambda_k: lambda_k(theta, k)?,
        lambda_opt: lambda_opt(theta)?,
        ranked: rank(objective, &pk),
        p0,
        pk,
        predicted_pk,
        ancilla_outcome,
        trace,
        provenance: Provenance {
            mode: cfg.mode,
            rng,
            oracle,
            oracle_gate_count,
        },
        warnings,
    })
}

/// Scales `F` towards the requested extremum and amplifies; the head of
/// `ranked` is the extremum candidate.
pub fn find_extrema(
    base: &FourierSpectrum,
    bounds: ObjectiveBounds,
    which: Extremum,
    cfg: &AAConfig,
    oracle: OracleKind,
) -> Result<AARunReport> {
    cfg.validate()?;
    let objective = scale_objective(base, bounds, which.direction(), cfg.scale)?;
    run(&objective, cfg, oracle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier::{fourier_fast, qubo_bounds, qubo_to_fourier, QuboMatrix};
    use crate::statevector::hadamard_all;
    use rand::Rng;

    fn example_qubo() -> QuboMatrix {
        QuboMatrix::new(vec![
            vec![-6.0, 5.0, 0.0, 0.0],
            vec![5.0, -8.0, 1.0, 4.0],
            vec![0.0, 1.0, -3.0, 2.0],
            vec![0.0, 4.0, 2.0, -5.0],
        ])
        .unwrap()
    }

    fn example_objective(direction: Direction, scale: f64) -> ScaledObjective {
        let q = example_qubo();
        let b = qubo_bounds(&q);
        scale_objective(
            &qubo_to_fourier(&q),
            ObjectiveBounds::new(b.q_minus, b.q_plus).unwrap(),
            direction,
            scale,
        )
        .unwrap()
    }

    fn random_objective(n: usize, rng: &mut ChaCha8Rng) -> ScaledObjective {
        let f = FunctionTable::from_fn(n, |_| rng.gen_range(-10.0..10.0)).unwrap();
        let bounds = ObjectiveBounds::of_table(&f).unwrap();
        let direction = if rng.gen() {
            Direction::Plus
        } else {
            Direction::Minus
        };
        let scale = rng.gen_range(0.2..FRAC_PI_2);
        scale_objective(&fourier_fast(&f), bounds, direction, scale).unwrap()
    }

    #[test]
    fn scaling_endpoints() {
        let f = FunctionTable::new(1, vec![0.0, 1.0]).unwrap();
        let obj = scale_objective(
            &fourier_fast(&f),
            ObjectiveBounds::new(0.0, 1.0).unwrap(),
            Direction::Plus,
            FRAC_PI_2,
        )
        .unwrap();
        assert!((obj.values().get(0) - FRAC_PI_2).abs() < 1e-15);
        assert!(obj.values().get(1).abs() < 1e-15);
    }

    #[test]
    fn scaled_example_objective() {
        let obj = example_objective(Direction::Minus, FRAC_PI_2);
        let table = example_qubo().to_table();
        for x in 0..16 {
            let expected = (table.get(x) + 22.0) * PI / 92.0;
            assert!((obj.values().get(x) - expected).abs() < 1e-12);
        }
        assert!((obj.values().get(0b1111) - 24.0 * PI / 92.0).abs() < 1e-12);

        for direction in [Direction::Plus, Direction::Minus] {
            let obj = example_objective(direction, FRAC_PI_2);
            let bounds = obj.bounds();
            for x in 0..16 {
                let table_route = scale_value(table.get(x), bounds, direction, FRAC_PI_2);
                assert!((obj.values().get(x) - table_route).abs() < 1e-12);
                assert!((0.0..=FRAC_PI_2).contains(&table_route));
            }
        }
    }

    #[test]
    fn scaled_spectrum_matches_closed_form() {
        let q = example_qubo();
        let b = qubo_bounds(&q);
        let base = qubo_to_fourier(&q);
        for (direction, sign, qpm) in [
            (Direction::Plus, 1.0, b.q_plus),
            (Direction::Minus, -1.0, b.q_minus),
        ] {
            let obj = example_objective(direction, FRAC_PI_2);
            let c0 = sign * FRAC_PI_2 * (qpm - base.coefficient(0)) / b.norm11;
            assert!((obj.spectrum().coefficient(0) - c0).abs() < 1e-15);
            for (s, c) in base.iter().filter(|(s, _)| !s.is_empty()) {
                let expected = -sign * PI / (2.0 * b.norm11) * c;
                assert!((obj.spectrum().coefficient(s.mask()) - expected).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn scaling_errors() {
        let spec = fourier_fast(&FunctionTable::new(1, vec![0.0, 1.0]).unwrap());
        assert!(matches!(
            ObjectiveBounds::new(2.0, 2.0),
            Err(Error::DegenerateObjective { .. })
        ));
        let bounds = ObjectiveBounds::new(0.0, 1.0).unwrap();
        assert!(matches!(
            scale_objective(&spec, bounds, Direction::Plus, 2.0),
            Err(Error::InvalidScale(_))
        ));
        assert!(scale_objective(
            &spec,
            ObjectiveBounds::new(0.5, 1.0).unwrap(),
            Direction::Plus,
            1.0
        )
        .is_err());
    }

    #[test]
    fn initial_state() {
        let l1 = RegisterLayout::new(1).unwrap();
        let s = prepare_initial(l1);
        for a in s.amplitudes() {
            assert!((a.re - 0.5).abs() < 1e-15 && a.im == 0.0);
        }
        let l = RegisterLayout::new(5).unwrap();
        let s = prepare_initial(l);
        let mut via_h = StateVector::zero(l);
        via_h.apply_circuit(&hadamard_all(l)).unwrap();
        assert!(s.max_deviation(&via_h) < 1e-12);
        for p in s.work_probabilities() {
            assert!((p - 1.0 / 32.0).abs() < 1e-15);
        }
        assert_eq!(s.conjugate_symmetry_gap(), 0.0);
    }

    #[test]
    fn theta_examples() {
        let p0 = vec![0.25; 4];
        let zero = FunctionTable::constant(2, 0.0).unwrap();
        assert_eq!(compute_theta(&zero, &p0).unwrap(), 0.0);
        let half_pi = FunctionTable::constant(2, FRAC_PI_2).unwrap();
        assert!((compute_theta(&half_pi, &p0).unwrap() - FRAC_PI_2).abs() < 1e-15);
        assert!(compute_theta(&zero, &[0.5; 4]).is_err());

        let obj = example_objective(Direction::Minus, FRAC_PI_4);
        let theta = compute_theta(obj.values(), &[1.0 / 16.0; 16]).unwrap();
        assert!((theta - 0.296).abs() <= 0.002, "{theta}");
    }

    #[test]
    fn lambda_examples() {
        for theta in [0.1, 0.7, 2.0] {
            assert_eq!(lambda_k(theta, 0).unwrap(), 0.0);
        }
        assert_eq!(optimal_iterations(FRAC_PI_4).unwrap(), 2);
        // θ₋ = 0.296 is a rounded value; λ₅ is steep in θ.
        let l = lambda_k(0.296, 5).unwrap();
        assert!((22.7..=23.0).contains(&l), "{l}");
        let obj = example_objective(Direction::Minus, FRAC_PI_4);
        let theta = compute_theta(obj.values(), &[1.0 / 16.0; 16]).unwrap();
        let l = lambda_k(theta, 5).unwrap();
        assert!((22.8..=22.9).contains(&l), "{l}");
        assert!((lambda_opt(FRAC_PI_2).unwrap() - 1.0).abs() < 1e-15);
        for bad in [0.0, PI, f64::NAN] {
            assert!(matches!(lambda_k(bad, 1), Err(Error::DegenerateTheta(_))));
            assert!(optimal_iterations(bad).is_err());
        }
    }

    #[test]
    fn lambda_is_monotone_then_bounded() {
        for step in 1..=150 {
            let theta = step as f64 * 0.01;
            let k_tilde = optimal_iterations(theta).unwrap();
            let mut previous = f64::NEG_INFINITY;
            for k in 0..=k_tilde {
                let l = lambda_k(theta, k).unwrap();
                assert!(l > previous, "θ={theta} K={k}");
                previous = l;
            }
            let bound = lambda_opt(theta).unwrap();
            for k in 0..=10_000 {
                assert!(lambda_k(theta, k).unwrap() <= bound + 1e-12);
            }
        }
    }

    #[test]
    fn reflection_examples() {
        let l = RegisterLayout::new(3).unwrap();
        let psi0 = prepare_initial(l);
        let mut s = psi0.clone();
        reflect_about_initial(&mut s);
        assert!(s.max_deviation(&psi0) < 1e-15);

        // |000⟩|0⟩ - |000⟩|1⟩ has zero overlap with the uniform state.
        let mut amps = vec![num_complex::Complex64::new(0.0, 0.0); l.dim()];
        amps[0] = num_complex::Complex64::new(1.0, 0.0);
        amps[1] = num_complex::Complex64::new(-1.0, 0.0);
        let orth = StateVector::from_amplitudes(l, amps).unwrap();
        let mut r = orth.clone();
        reflect_about_initial(&mut r);
        for (a, b) in r.amplitudes().iter().zip(orth.amplitudes()) {
            assert!((a + b).norm() < 1e-15);
        }

        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let s0 = StateVector::random(l, &mut rng);
        let mut s = s0.clone();
        reflect_about_initial(&mut s);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        reflect_about_initial(&mut s);
        assert!(s.max_deviation(&s0) < 1e-12);
    }

    #[test]
    fn zero_iterations_leave_distribution() {
        let obj = example_objective(Direction::Minus, FRAC_PI_4);
        let cfg = AAConfig {
            iterations: Iterations::Fixed(0),
            ..AAConfig::default()
        };
        let report = run(&obj, &cfg, OracleKind::Circuit).unwrap();
        assert_eq!(report.pk, report.p0);
        assert_eq!(report.predicted_pk, report.p0);
        assert_eq!(report.lambda_k, 0.0);
    }

    #[test]
    fn worked_example_runs() {
        let q = example_qubo();
        let b = qubo_bounds(&q);
        let bounds = ObjectiveBounds::new(b.q_minus, b.q_plus).unwrap();
        let cfg = AAConfig::default();

        let max = find_extrema(
            &qubo_to_fourier(&q),
            bounds,
            Extremum::Max,
            &cfg,
            OracleKind::Circuit,
        )
        .unwrap();
        assert_eq!(max.optimal_iterations, 5);
        assert_eq!(max.iterations, 5);
        assert_eq!(max.ranked[0].bits, "1111");
        assert_eq!(max.ranked[0].value, 2.0);
        assert_eq!(max.ranked[1].bits, "0000");

        let min = find_extrema(
            &qubo_to_fourier(&q),
            bounds,
            Extremum::Min,
            &cfg,
            OracleKind::Circuit,
        )
        .unwrap();
        assert!((min.theta - 0.499).abs() <= 0.002);
        assert_eq!(min.iterations, 3);
        assert!((7.9..=8.0).contains(&min.lambda_k), "{}", min.lambda_k);
        assert_eq!(min.ranked[0].bits, "1001");
        assert_eq!(min.ranked[0].value, -11.0);

        let x = 0b1111usize;
        let obj = example_objective(Direction::Minus, FRAC_PI_4);
        let ratio = (max.pk[x] - max.p0[x]) / max.p0[x];
        let expected = max.lambda_k * (max.theta.cos() - obj.values().get(x as u64).cos());
        assert!((ratio - expected).abs() < 1e-9);
    }

    #[test]
    fn closed_form_matches_simulation() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in 1..=5 {
            for _ in 0..4 {
                let obj = random_objective(n, &mut rng);
                let p0 = vec![1.0 / (1 << n) as f64; 1 << n];
                let theta = compute_theta(obj.values(), &p0).unwrap();
                let k_max = optimal_iterations(theta).unwrap().min(10);
                for k in 0..=k_max {
                    let (state, _) = evolve(&obj, k, OracleKind::Diagonal).unwrap();
                    let predicted = predicted_probabilities(obj.values(), theta, k, &p0).unwrap();
                    assert!((predicted.iter().sum::<f64>() - 1.0).abs() < 1e-9);
                    for (a, b) in state.work_probabilities().iter().zip(&predicted) {
                        assert!((a - b).abs() < 1e-9);
                    }
                }
            }
        }
    }

    #[test]
    fn amplification_ranking_follows_cos_gap() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        for n in 2..=5 {
            let obj = random_objective(n, &mut rng);
            let report = run(
                &obj,
                &AAConfig {
                    scale: obj.scale(),
                    ..AAConfig::default()
                },
                OracleKind::Diagonal,
            )
            .unwrap();
            assert!(report.lambda_k > 0.0);
            let cos_theta = report.theta.cos();
            let key: Vec<f64> = obj
                .values()
                .values()
                .iter()
                .map(|v| cos_theta - v.cos())
                .collect();
            let ratio: Vec<f64> = report
                .pk
                .iter()
                .zip(&report.p0)
                .map(|(a, b)| a / b)
                .collect();
            for x in 0..key.len() {
                assert_eq!(ratio[x] > 1.0, key[x] > 0.0);
                for y in 0..key.len() {
                    if key[x] > key[y] + 1e-9 {
                        assert!(ratio[x] > ratio[y]);
                    }
                }
            }
        }
    }

    #[test]
    fn negative_lambda_amplifies_the_other_side() {
        let obj = example_objective(Direction::Minus, FRAC_PI_4);
        let p0 = vec![1.0 / 16.0; 16];
        let theta = compute_theta(obj.values(), &p0).unwrap();
        let k = (0..100)
            .find(|&k| lambda_k(theta, k).unwrap() < -0.25)
            .expect("λ_K turns negative within one period");
        let cfg = AAConfig {
            iterations: Iterations::Fixed(k),
            ..AAConfig::default()
        };
        let report = run(&obj, &cfg, OracleKind::Circuit).unwrap();
        assert!(report.lambda_k < 0.0);
        for x in 0..16 {
            let c = obj.values().get(x).cos();
            if c > theta.cos() {
                assert!(report.pk[x as usize] > report.p0[x as usize]);
            } else if c < theta.cos() {
                assert!(report.pk[x as usize] < report.p0[x as usize]);
            }
        }
    }

    #[test]
    fn extrema_sets_coincide() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let argset = |values: &[f64], pick_max: bool| -> Vec<usize> {
            let target = if pick_max {
                values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            } else {
                values.iter().copied().fold(f64::INFINITY, f64::min)
            };
            (0..values.len()).filter(|&x| values[x] == target).collect()
        };
        for _ in 0..100 {
            let n = rng.gen_range(1..=6);
            let f = FunctionTable::from_fn(n, |_| f64::from(rng.gen_range(-4i32..=4))).unwrap();
            let Ok(bounds) = ObjectiveBounds::of_table(&f) else {
                continue;
            };
            let plus: Vec<f64> = f
                .values()
                .iter()
                .map(|&v| scale_value(v, bounds, Direction::Plus, FRAC_PI_2))
                .collect();
            let minus: Vec<f64> = f
                .values()
                .iter()
                .map(|&v| scale_value(v, bounds, Direction::Minus, FRAC_PI_2))
                .collect();
            assert_eq!(argset(&plus, true), argset(f.values(), false));
            assert_eq!(argset(&minus, true), argset(f.values(), true));
            assert_eq!(argset(&plus, false), argset(f.values(), true));
            assert_eq!(argset(&minus, false), argset(f.values(), false));
        }
    }

    #[test]
    fn ancilla_stays_fair_and_disentangled() {
        let mut rng = ChaCha8Rng::seed_from_u64(24);
        for n in 1..=5 {
            let obj = random_objective(n, &mut rng);
            let (_, trace) = evolve(&obj, 12, OracleKind::Circuit).unwrap();
            for d in trace {
                assert!((d.ancilla_zero_probability - 0.5).abs() < 1e-10);
                assert!(d.conditional_gap < 1e-10);
                assert!(d.conjugate_symmetry_gap < 1e-10);
                assert!((d.norm - 1.0).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn circuit_and_diagonal_oracles_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(25);
        for n in 1..=5 {
            let obj = random_objective(n, &mut rng);
            for k in [1, 4, 7] {
                let (a, _) = evolve(&obj, k, OracleKind::Circuit).unwrap();
                let (b, _) = evolve(&obj, k, OracleKind::Diagonal).unwrap();
                assert!(a.max_deviation(&b) < 1e-9);
            }
        }
    }

    #[test]
    fn sampled_mode_is_reproducible() {
        let obj = example_objective(Direction::Plus, FRAC_PI_4);
        let cfg = AAConfig {
            mode: SamplingMode::Sampled {
                shots: 2000,
                seed: 42,
            },
            ..AAConfig::default()
        };
        let a = run(&obj, &cfg, OracleKind::Diagonal).unwrap();
        let b = run(&obj, &cfg, OracleKind::Diagonal).unwrap();
        assert_eq!(a, b);
        assert!(a.ancilla_outcome.is_some());
        assert_eq!(a.provenance.rng.as_deref(), Some(RNG_NAME));
        assert!((a.pk.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        assert_eq!(a.ranked[0].bits, "1001");

        let bad = AAConfig {
            mode: SamplingMode::Sampled { shots: 0, seed: 1 },
            ..AAConfig::default()
        };
        assert!(run(&obj, &bad, OracleKind::Diagonal).is_err());
    }

    #[test]
    fn iteration_cap() {
        let obj = example_objective(Direction::Minus, FRAC_PI_4);
        let capped = AAConfig {
            iteration_cap: 2,
            ..AAConfig::default()
        };
        let report = run(&obj, &capped, OracleKind::Diagonal).unwrap();
        assert_eq!(report.iterations, 2);
        assert_eq!(report.warnings.len(), 1);

        let too_many = AAConfig {
            iterations: Iterations::Fixed(3),
            iteration_cap: 2,
            ..AAConfig::default()
        };
        assert_eq!(
            run(&obj, &too_many, OracleKind::Diagonal).unwrap_err(),
            Error::IterationCap {
                requested: 3,
                cap: 2
            }
        );
    }

    #[test]
    fn near_constant_objective_is_refused() {
        // Bounds far wider than the objective's spread squeeze f into a sliver near 0.
        let f = FunctionTable::new(2, vec![0.0, 1e-13, 0.0, 0.0]).unwrap();
        let obj = scale_objective(
            &fourier_fast(&f),
            ObjectiveBounds::new(0.0, 1e6).unwrap(),
            Direction::Minus,
            FRAC_PI_4,
        )
        .unwrap();
        assert!(matches!(
            run(&obj, &AAConfig::default(), OracleKind::Diagonal),
            Err(Error::DegenerateTheta(_))
        ));
    }
}
