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

use std::fs;
use std::path::{Path, PathBuf};

use binopt_cli::commands::{
    cmd_amplify, cmd_fourier, cmd_oracle, parse_iterations, parse_scale, verify_gate_list,
    AmplifyOptions, OracleOptions, DEFAULT_MAX_QUBITS, VERIFY_TOLERANCE,
};
use binopt_cli::problem::ProblemFile;
use binopt_cli::report::histogram_csv;
use binopt_cli::{CliError, ExitCode};
use binopt_core::amplify::{Extremum, Iterations, OracleKind, DEFAULT_ITERATION_CAP};
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "binopt",
    version,
    about = "Fourier oracles and non-Boolean amplitude amplification for binary optimization"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Min,
    Max,
}

impl From<Mode> for Extremum {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Min => Extremum::Min,
            Mode::Max => Extremum::Max,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleArg {
    Circuit,
    Diagonal,
}

#[derive(Subcommand)]
enum Command {
    /// Write the sparse Fourier spectrum of a problem.
    Fourier {
        problem: PathBuf,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        symmetrize: bool,
    },
    /// Run amplitude amplification towards the minimum or maximum.
    Amplify {
        problem: PathBuf,
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value = "auto", value_parser = parse_iterations)]
        iterations: Iterations,
        #[arg(long, default_value_t = DEFAULT_ITERATION_CAP)]
        iteration_cap: usize,
        /// pi/2, pi/4 or radians.
        #[arg(long, default_value = "pi/4", value_parser = parse_scale)]
        scale: f64,
        /// Sample the final state instead of reporting exact probabilities.
        #[arg(long, requires = "seed")]
        shots: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Report path; stdout when omitted.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "circuit")]
        oracle: OracleArg,
        #[arg(long)]
        symmetrize: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_QUBITS)]
        max_qubits: usize,
    },
    /// Write the synthesized oracle as a gate list.
    Oracle {
        problem: PathBuf,
        /// Build the oracle of the scaled objective for this extremum.
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long, default_value = "pi/4", value_parser = parse_scale)]
        scale: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Check the gate list against the diagonal oracle.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        symmetrize: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_QUBITS)]
        max_qubits: usize,
    },
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Io {
            path: p.to_owned(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Fourier {
            problem,
            out,
            symmetrize,
        } => {
            let problem = ProblemFile::load(&problem)?;
            let spectrum = cmd_fourier(&problem, symmetrize)?;
            let text = serde_json::to_string_pretty(&spectrum).expect("spectrum serializes") + "\n";
            write_output(out.as_deref(), &text)
        }
        Command::Amplify {
            problem,
            mode,
            iterations,
            iteration_cap,
            scale,
            shots,
            seed,
            csv,
            json,
            oracle,
            symmetrize,
            max_qubits,
        } => {
            let problem = ProblemFile::load(&problem)?;
            let opts = AmplifyOptions {
                mode: mode.into(),
                iterations,
                iteration_cap,
                scale,
                shots,
                seed,
                oracle: match oracle {
                    OracleArg::Circuit => OracleKind::Circuit,
                    OracleArg::Diagonal => OracleKind::Diagonal,
                },
                symmetrize,
                max_qubits,
            };
            let report = cmd_amplify(&problem, &opts)?;
            for w in &report.result.warnings {
                eprintln!("warning: {w}");
            }
            if let Some(path) = csv.as_deref() {
                write_output(Some(path), &histogram_csv(&report.result))?;
            }
            write_output(json.as_deref(), &(report.to_json() + "\n"))?;
            if json.is_some() {
                let r = &report.result;
                let best = r.best();
                println!(
                    "theta={:.6} K={} lambda={:.4} best={} F={} p={:.6}",
                    r.theta, r.iterations, r.lambda_k, best.bits, best.value, best.probability
                );
            }
            Ok(())
        }
        Command::Oracle {
            problem,
            mode,
            scale,
            out,
            verify,
            symmetrize,
            max_qubits,
        } => {
            let problem = ProblemFile::load(&problem)?;
            let opts = OracleOptions {
                mode: mode.map(Into::into),
                scale,
                symmetrize,
                max_qubits,
            };
            let built = cmd_oracle(&problem, &opts)?;
            write_output(out.as_deref(), &built.gate_list)?;
            eprintln!("blocks={} gates={}", built.blocks, built.gate_count);
            if verify {
                let deviation = verify_gate_list(&built.gate_list, &built.phases, 0)?;
                eprintln!("max amplitude deviation {deviation:e}");
                if deviation > VERIFY_TOLERANCE {
                    return Err(CliError::Verification {
                        deviation,
                        tolerance: VERIFY_TOLERANCE,
                    });
                }
            }
            Ok(())
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match execute(cli) {
        Ok(()) => ExitCode::Success,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code as i32);
}
