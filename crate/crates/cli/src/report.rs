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

//! Output documents: spectrum files, run reports and histogram CSV.

use std::fmt::Write as _;

use binopt_core::amplify::{AARunReport, Extremum, Iterations, OracleKind};
use binopt_core::fourier::{format_binary, FourierSpectrum};
use serde::{Deserialize, Serialize};

use crate::problem::ProblemFile;

pub const TOOL_NAME: &str = "binopt";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub mask: u64,
    pub subset: Vec<usize>,
    pub coeff: f64,
}

/// Sparse spectrum, sorted by mask.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    pub entries: Vec<SpectrumEntry>,
}

impl SpectrumFile {
    pub fn new(name: Option<String>, spectrum: &FourierSpectrum) -> Self {
        Self {
            name,
            n: spectrum.width(),
            entries: spectrum
                .iter()
                .map(|(s, coeff)| SpectrumEntry {
                    mask: s.mask(),
                    subset: s.indices(),
                    coeff,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl Default for ToolInfo {
    fn default() -> Self {
        Self {
            name: TOOL_NAME.into(),
            version: TOOL_VERSION.into(),
        }
    }
}

/// The options a run was made with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub mode: Extremum,
    pub iterations: Iterations,
    pub iteration_cap: usize,
    pub scale: f64,
    pub oracle: OracleKind,
    pub shots: Option<usize>,
    pub seed: Option<u64>,
    pub symmetrize: bool,
}

/// Fields that legitimately differ between identical runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub generated_at_unix: u64,
    pub wall_clock_seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub tool: ToolInfo,
    pub problem: ProblemFile,
    pub config: ConfigEcho,
    pub result: AARunReport,
    pub timing: Timing,
}

impl ReportFile {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report fields are serializable")
    }
}

/// `x_binary,F(x),p0,pK,ratio`, one row per `x` in ascending order.
pub fn histogram_csv(report: &AARunReport) -> String {
    let mut values = vec![0.0; report.pk.len()];
    for c in &report.ranked {
        values[c.x as usize] = c.value;
    }
    let mut out = String::from("x_binary,F(x),p0,pK,ratio\n");
    for (x, value) in values.iter().enumerate() {
        let (p0, pk) = (report.p0[x], report.pk[x]);
        writeln!(
            out,
            "{},{},{},{},{}",
            format_binary(x as u64, report.n),
            value,
            p0,
            pk,
            pk / p0
        )
        .expect("writing to a String cannot fail");
    }
    out
}
