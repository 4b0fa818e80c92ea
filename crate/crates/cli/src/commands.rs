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

//! The `fourier`, `amplify` and `oracle` subcommands, independent of argument
//! parsing and file I/O.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use binopt_core::amplify::{
    find_extrema, scale_objective, scale_value, AAConfig, Extremum, Iterations, OracleKind,
    SamplingMode, DEFAULT_ITERATION_CAP, DEFAULT_SCALE,
};
use binopt_core::fourier::FunctionTable;
use binopt_core::oracle::{
    build_u_f, export_gate_list, parse_gate_list, reference_oracle_apply, OracleSign,
};
use binopt_core::statevector::{RegisterLayout, StateVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::problem::ProblemFile;
use crate::report::{ConfigEcho, ReportFile, SpectrumFile, Timing, ToolInfo};
use crate::CliError;

pub const DEFAULT_MAX_QUBITS: usize = 20;

/// Largest tolerated deviation between the synthesized and diagonal oracles.
pub const VERIFY_TOLERANCE: f64 = 1e-9;

/// Parses `pi/2`, `pi/4` or a plain number of radians.
pub fn parse_scale(s: &str) -> Result<f64, String> {
    match s.trim().to_ascii_lowercase().as_str() {
        "pi/2" => Ok(FRAC_PI_2),
        "pi/4" => Ok(FRAC_PI_4),
        other => other
            .parse::<f64>()
            .map_err(|_| format!("expected pi/2, pi/4 or radians, got {s:?}")),
    }
}

/// Parses `auto` or a non-negative iteration count.
pub fn parse_iterations(s: &str) -> Result<Iterations, String> {
    if s.eq_ignore_ascii_case("auto") {
        return Ok(Iterations::Auto);
    }
    s.parse::<usize>()
        .map(Iterations::Fixed)
        .map_err(|_| format!("expected auto or a count, got {s:?}"))
}

pub fn cmd_fourier(problem: &ProblemFile, symmetrize: bool) -> Result<SpectrumFile, CliError> {
    let objective = problem.objective(symmetrize)?;
    Ok(SpectrumFile::new(problem.name.clone(), &objective.spectrum))
}

#[derive(Debug, Clone, PartialEq)]
pub struct AmplifyOptions {
    pub mode: Extremum,
    pub iterations: Iterations,
    pub iteration_cap: usize,
    pub scale: f64,
    pub shots: Option<usize>,
    pub seed: Option<u64>,
    pub oracle: OracleKind,
    pub symmetrize: bool,
    pub max_qubits: usize,
}

impl AmplifyOptions {
    pub fn new(mode: Extremum) -> Self {
        Self {
            mode,
            iterations: Iterations::Auto,
            iteration_cap: DEFAULT_ITERATION_CAP,
            scale: DEFAULT_SCALE,
            shots: None,
            seed: None,
            oracle: OracleKind::Circuit,
            symmetrize: false,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }

    fn config(&self) -> Result<AAConfig, CliError> {
        let mode = match (self.shots, self.seed) {
            (None, _) => SamplingMode::Exact,
            (Some(shots), Some(seed)) => SamplingMode::Sampled { shots, seed },
            (Some(_), None) => {
                return Err(CliError::Parse("--shots requires --seed".into()));
            }
        };
        Ok(AAConfig {
            iterations: self.iterations,
            iteration_cap: self.iteration_cap,
            mode,
            scale: self.scale,
        })
    }
}

fn check_limit(n: usize, limit: usize) -> Result<(), CliError> {
    if n > limit {
        return Err(CliError::Limit(format!(
            "{n} variables exceed the simulation limit of {limit}"
        )));
    }
    Ok(())
}

pub fn cmd_amplify(problem: &ProblemFile, opts: &AmplifyOptions) -> Result<ReportFile, CliError> {
    let started = Instant::now();
    check_limit(problem.n, opts.max_qubits)?;
    let cfg = opts.config()?;
    let objective = problem.objective(opts.symmetrize)?;
    let result = find_extrema(
        &objective.spectrum,
        objective.bounds()?,
        opts.mode,
        &cfg,
        opts.oracle,
    )?;
    let generated_at_unix = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    Ok(ReportFile {
        tool: ToolInfo::default(),
        problem: problem.clone(),
        config: ConfigEcho {
            mode: opts.mode,
            iterations: opts.iterations,
            iteration_cap: opts.iteration_cap,
            scale: opts.scale,
            oracle: opts.oracle,
            shots: opts.shots,
            seed: opts.seed,
            symmetrize: opts.symmetrize,
        },
        result,
        timing: Timing {
            generated_at_unix,
            wall_clock_seconds: started.elapsed().as_secs_f64(),
        },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleOptions {
    /// Synthesize `U_{f_±}` for this extremum instead of `U_F`.
    pub mode: Option<Extremum>,
    pub scale: f64,
    pub symmetrize: bool,
    pub max_qubits: usize,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            mode: None,
            scale: DEFAULT_SCALE,
            symmetrize: false,
            max_qubits: DEFAULT_MAX_QUBITS,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleOutput {
    pub gate_list: String,
    /// Number of `U_S` blocks, one per nonzero coefficient.
    pub blocks: usize,
    pub gate_count: usize,
    /// Phase function the oracle encodes, computed from the problem data
    /// without going through the spectrum.
    pub phases: FunctionTable,
}

pub fn cmd_oracle(problem: &ProblemFile, opts: &OracleOptions) -> Result<OracleOutput, CliError> {
    check_limit(problem.n, opts.max_qubits)?;
    let objective = problem.objective(opts.symmetrize)?;
    let layout = RegisterLayout::new(problem.n)?;
    let table = objective.table();
    let (spectrum, phases) = match opts.mode {
        None => (objective.spectrum.clone(), table),
        Some(which) => {
            let bounds = objective.bounds()?;
            let direction = which.direction();
            let scaled = scale_objective(&objective.spectrum, bounds, direction, opts.scale)?;
            let phases = FunctionTable::new(
                problem.n,
                table
                    .values()
                    .iter()
                    .map(|&v| scale_value(v, bounds, direction, opts.scale))
                    .collect(),
            )?;
            (scaled.spectrum().clone(), phases)
        }
    };
    let build = build_u_f(&spectrum, layout)?;
    Ok(OracleOutput {
        gate_list: export_gate_list(&build.circuit),
        blocks: build.subset_order.len(),
        gate_count: build.gate_count(),
        phases,
    })
}

/// Simulates a gate list against the diagonal oracle for `phases` on a few
/// seeded random states and returns the largest amplitude deviation.
pub fn verify_gate_list(
    gate_list: &str,
    phases: &FunctionTable,
    seed: u64,
) -> Result<f64, CliError> {
    let circuit = parse_gate_list(gate_list).map_err(|e| CliError::Parse(e.to_string()))?;
    let layout = circuit.layout();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..4 {
        let start = StateVector::random(layout, &mut rng);
        let mut via_circuit = start.clone();
        via_circuit.apply_circuit(&circuit)?;
        let mut via_diagonal = start;
        reference_oracle_apply(phases, &mut via_diagonal, OracleSign::Forward)?;
        worst = worst.max(via_circuit.max_deviation(&via_diagonal));
    }
    Ok(worst)
}
