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

//! Oracle operators for real-valued functions on the Boolean cube.
//!
//! The crate is organised bottom-up:
//!
//! - [`fourier`]: parity functions, Walsh-Hadamard transforms and closed-form
//!   spectra of QUBO and higher-order pseudo-Boolean objectives.
//! - [`statevector`]: exact simulation of the work register plus one ancilla
//!   with the gate set `{X, P(α), CNOT, H}`.
//! - [`oracle`]: gate-level synthesis of the conditional phase oracle
//!   `U_f = Σ_x |x⟩⟨x| ⊗ (e^{if(x)}|0⟩⟨0| + e^{-if(x)}|1⟩⟨1|)` from the
//!   Fourier spectrum of `f`, and a diagonal reference implementation.
//! - [`amplify`]: non-Boolean amplitude amplification and its use for finding
//!   extrema of binary optimization objectives.
//!
//! Amplitude indices follow one convention throughout: the ancilla is the
//! least significant qubit, so `|x⟩ ⊗ |a⟩` lives at index `2x + a` and work
//! qubit `j` is combined-register qubit `j + 1`.

pub mod amplify;
mod error;
pub mod fourier;
pub mod oracle;
pub mod statevector;

pub use error::{Error, Result};
