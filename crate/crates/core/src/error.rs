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

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("width mismatch: {left} bits vs {right} bits")]
    WidthMismatch { left: usize, right: usize },
    #[error("invalid width {0}: must be between 1 and {max}", max = crate::fourier::MAX_WIDTH)]
    InvalidWidth(usize),
    #[error("value {value} does not fit in {n} bits")]
    ValueOutOfRange { value: u64, n: usize },
    #[error("invalid binary string {0:?}")]
    InvalidBinary(String),
    #[error("expected {expected} table entries, got {got}")]
    TableLength { expected: usize, got: usize },
    #[error("non-finite value at position {0}")]
    NonFinite(usize),
    #[error("matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("matrix is not symmetric: Q[{i}][{j}] = {a} but Q[{j}][{i}] = {b}")]
    Asymmetric { i: usize, j: usize, a: f64, b: f64 },
    #[error("variable index {index} out of range for {n} variables")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("invalid register layout: {0} work qubits")]
    InvalidLayout(usize),
    #[error("gate {gate} is invalid for a {qubits}-qubit register")]
    InvalidGate { gate: String, qubits: usize },
    #[error("layout mismatch: {left} work qubits vs {right}")]
    LayoutMismatch { left: usize, right: usize },
    #[error("state has zero norm")]
    ZeroNorm,
    #[error("norm drifted to {0} after circuit application")]
    NormDrift(f64),
    #[error("degenerate objective: lower bound {lower} is not below upper bound {upper}")]
    DegenerateObjective { lower: f64, upper: f64 },
    #[error("scale {0} must lie in (0, π/2]")]
    InvalidScale(f64),
    #[error("degenerate θ = {0}: the objective provides no amplifiable contrast")]
    DegenerateTheta(f64),
    #[error("cos θ = {0} lies outside [-1, 1]")]
    ThetaDomain(f64),
    #[error("{requested} iterations exceed the cap of {cap}")]
    IterationCap { requested: usize, cap: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
