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

use std::path::PathBuf;

use thiserror::Error;

/// Process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(i32)]
pub enum ExitCode {
    Success = 0,
    Failure = 1,
    Parse = 3,
    Degenerate = 4,
    Verification = 5,
    Limit = 6,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Degenerate(String),
    #[error(
        "oracle verification failed: max amplitude deviation {deviation:e} exceeds {tolerance:e}"
    )]
    Verification { deviation: f64, tolerance: f64 },
    #[error("limit exceeded: {0}")]
    Limit(String),
    #[error(transparent)]
    Core(binopt_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Io { .. } | CliError::Core(_) => ExitCode::Failure,
            CliError::Parse(_) => ExitCode::Parse,
            CliError::Degenerate(_) => ExitCode::Degenerate,
            CliError::Verification { .. } => ExitCode::Verification,
            CliError::Limit(_) => ExitCode::Limit,
        }
    }
}

impl From<binopt_core::Error> for CliError {
    fn from(e: binopt_core::Error) -> Self {
        use binopt_core::Error as E;
        match e {
            E::WidthMismatch { .. }
            | E::InvalidWidth(_)
            | E::InvalidBinary(_)
            | E::TableLength { .. }
            | E::NonFinite(_)
            | E::NotSquare { .. }
            | E::Asymmetric { .. }
            | E::IndexOutOfRange { .. } => CliError::Parse(e.to_string()),
            E::DegenerateObjective { .. } | E::DegenerateTheta(_) => {
                CliError::Degenerate(e.to_string())
            }
            E::IterationCap { .. } | E::InvalidLayout(_) => CliError::Limit(e.to_string()),
            other => CliError::Core(other),
        }
    }
}
