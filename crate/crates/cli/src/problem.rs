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

//! Problem files.
//!
//! A problem is a single JSON document with a `kind` tag:
//!
//! ```json
//! { "name": "demo", "kind": "qubo", "n": 2, "matrix": [[1, -1], [-1, 2]] }
//! { "kind": "poly", "n": 3, "terms": [{ "vars": [0, 2], "coeff": 4 }] }
//! { "kind": "table", "n": 1, "values": [0.5, -1] }
//! ```
//!
//! Row and column `i` of a QUBO matrix refer to variable `x_i`, and bit `i` of
//! a table index is `x_i`.

use std::path::Path;

use binopt_core::amplify::ObjectiveBounds;
use binopt_core::fourier::{
    fourier_fast, poly_to_fourier, qubo_bounds, qubo_to_fourier, FourierSpectrum, FunctionTable,
    PseudoBooleanPolynomial, QuboMatrix,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n: usize,
    #[serde(flatten)]
    pub payload: Payload,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Payload {
    Qubo { matrix: Vec<Vec<f64>> },
    Poly { terms: Vec<PolyTerm> },
    Table { values: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyTerm {
    pub vars: Vec<usize>,
    pub coeff: f64,
}

/// Ingested objective: exact evaluator, spectrum and a priori bounds.
#[derive(Debug, Clone)]
pub struct Objective {
    pub n: usize,
    pub spectrum: FourierSpectrum,
    pub lower: f64,
    pub upper: f64,
    source: Source,
}

#[derive(Debug, Clone)]
enum Source {
    Qubo(QuboMatrix),
    Poly(PseudoBooleanPolynomial),
    Table(FunctionTable),
}

impl Objective {
    /// `F(x)` computed directly from the problem data.
    pub fn evaluate(&self, x: u64) -> f64 {
        match &self.source {
            Source::Qubo(q) => q.evaluate(x),
            Source::Poly(p) => p.evaluate(x),
            Source::Table(t) => t.get(x),
        }
    }

    pub fn table(&self) -> FunctionTable {
        match &self.source {
            Source::Qubo(q) => q.to_table(),
            Source::Poly(p) => p.to_table(),
            Source::Table(t) => t.clone(),
        }
    }

    pub fn bounds(&self) -> Result<ObjectiveBounds, CliError> {
        Ok(ObjectiveBounds::new(self.lower, self.upper)?)
    }
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let problem: ProblemFile =
            serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))?;
        problem.validate()?;
        Ok(problem)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Parse(msg) => CliError::Parse(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    fn validate(&self) -> Result<(), CliError> {
        let n = self.n;
        if n == 0 || n > binopt_core::fourier::MAX_WIDTH {
            return Err(CliError::Parse(format!("field `n`: unsupported width {n}")));
        }
        match &self.payload {
            Payload::Qubo { matrix } => {
                if matrix.len() != n {
                    return Err(CliError::Parse(format!(
                        "field `matrix`: expected {n} rows, got {}",
                        matrix.len()
                    )));
                }
                if let Some((i, row)) = matrix.iter().enumerate().find(|(_, r)| r.len() != n) {
                    return Err(CliError::Parse(format!(
                        "field `matrix[{i}]`: expected {n} entries, got {}",
                        row.len()
                    )));
                }
            }
            Payload::Poly { terms } => {
                for (t, term) in terms.iter().enumerate() {
                    if let Some(v) = term.vars.iter().find(|&&v| v >= n) {
                        return Err(CliError::Parse(format!(
                            "field `terms[{t}].vars`: index {v} out of range for n = {n}"
                        )));
                    }
                }
            }
            Payload::Table { values } => {
                if values.len() != 1 << n {
                    return Err(CliError::Parse(format!(
                        "field `values`: expected {} entries, got {}",
                        1usize << n,
                        values.len()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Builds the objective. `symmetrize` replaces an asymmetric QUBO matrix
    /// by `(Q + Qᵀ)/2` instead of rejecting it.
    pub fn objective(&self, symmetrize: bool) -> Result<Objective, CliError> {
        let n = self.n;
        let (spectrum, lower, upper, source) = match &self.payload {
            Payload::Qubo { matrix } => {
                let q = if symmetrize {
                    QuboMatrix::symmetrized(matrix.clone())?
                } else {
                    QuboMatrix::new(matrix.clone()).map_err(|e| {
                        CliError::Parse(format!("{e} (pass --symmetrize to use (Q + Qᵀ)/2)"))
                    })?
                };
                let b = qubo_bounds(&q);
                (qubo_to_fourier(&q), b.q_minus, b.q_plus, Source::Qubo(q))
            }
            Payload::Poly { terms } => {
                let p = PseudoBooleanPolynomial::new(
                    n,
                    terms.iter().map(|t| (t.vars.clone(), t.coeff)),
                )?;
                let (lower, upper) = p.coefficient_bounds();
                (poly_to_fourier(&p), lower, upper, Source::Poly(p))
            }
            Payload::Table { values } => {
                let t = FunctionTable::new(n, values.clone())?;
                (fourier_fast(&t), t.min(), t.max(), Source::Table(t))
            }
        };
        Ok(Objective {
            n,
            spectrum,
            lower,
            upper,
            source,
        })
    }
}
