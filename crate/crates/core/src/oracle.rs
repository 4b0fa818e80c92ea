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

//! Gate-level synthesis of the conditional phase oracle.
//!
//! For every subset `S` the block
//!
//! ```text
//! U_S(α) = U_{Ŝ·} CM₁(α) CM₀(α) U_{Ŝ·},    U_{Ŝ·} = R_S† V_S R_S
//! ```
//!
//! multiplies `|x⟩⊗|a⟩` by `e^{iα(1-2a)χ_S(x)}`. Since the blocks commute and
//! `f(x) = Σ_S f̂(S)χ_S(x)`, concatenating `U_S(f̂(S))` over the spectrum gives
//! `U_f`. Everything is built from X, P(α) and CNOT.

use std::fmt::Write as _;

use num_complex::Complex64;

use crate::fourier::{FourierSpectrum, FunctionTable, SubsetMask};
use crate::statevector::{Circuit, Gate, RegisterLayout, StateVector, ANCILLA};
use crate::{Error, Result};

fn check_subset(s: SubsetMask, layout: RegisterLayout) -> Result<()> {
    if s.width() != layout.work_qubits() {
        return Err(Error::WidthMismatch {
            left: s.width(),
            right: layout.work_qubits(),
        });
    }
    Ok(())
}

fn push(circuit: &mut Circuit, gate: Gate) {
    circuit
        .push(gate)
        .expect("gate indices derive from a validated layout");
}

/// CNOT cascade leaving `Ŝ·x` on work qubit `j_1 = min S`.
///
/// Gates run from the top of the cascade down (`j_|S| → j_{|S|-1}` first,
/// `j_2 → j_1` last) so each target accumulates the parity of everything above
/// it. Empty for `|S| ≤ 1`.
pub fn build_r_s(s: SubsetMask, layout: RegisterLayout) -> Result<Circuit> {
    check_subset(s, layout)?;
    let members = s.indices();
    let mut circuit = Circuit::new(layout);
    for pair in members.windows(2).rev() {
        push(
            &mut circuit,
            Gate::Cnot {
                control: layout.work_qubit(pair[1]),
                target: layout.work_qubit(pair[0]),
            },
        );
    }
    Ok(circuit)
}

/// `CNOT(j_1 + 1, 0)`, or nothing for the empty set.
pub fn build_v_s(s: SubsetMask, layout: RegisterLayout) -> Result<Circuit> {
    check_subset(s, layout)?;
    let mut circuit = Circuit::new(layout);
    if let Some(j1) = s.iter().next() {
        push(
            &mut circuit,
            Gate::Cnot {
                control: layout.work_qubit(j1),
                target: ANCILLA,
            },
        );
    }
    Ok(circuit)
}

/// `|x⟩⊗|a⟩ ↦ |x⟩⊗|a ⊕ Ŝ·x⟩` as `R_S`, `V_S`, then `R_S` reversed.
pub fn build_u_parity(s: SubsetMask, layout: RegisterLayout) -> Result<Circuit> {
    let r = build_r_s(s, layout)?;
    let mut circuit = r.clone();
    circuit.append(&build_v_s(s, layout)?)?;
    circuit.append(&r.reversed())?;
    Ok(circuit)
}

/// `CM₀(α) = X P(α) X` on the ancilla: phase `e^{iα}` when `a = 0`.
pub fn build_cm0(alpha: f64, layout: RegisterLayout) -> Result<Circuit> {
    Circuit::from_gates(
        layout,
        vec![Gate::X(ANCILLA), Gate::P(ANCILLA, alpha), Gate::X(ANCILLA)],
    )
}

/// `CM₁(α) = P(-α)` on the ancilla: phase `e^{-iα}` when `a = 1`.
pub fn build_cm1(alpha: f64, layout: RegisterLayout) -> Result<Circuit> {
    Circuit::from_gates(layout, vec![Gate::P(ANCILLA, -alpha)])
}

/// `U_S(α)`: phase `e^{iαχ_S(x)}` on `a = 0` and `e^{-iαχ_S(x)}` on `a = 1`.
pub fn build_u_s(s: SubsetMask, alpha: f64, layout: RegisterLayout) -> Result<Circuit> {
    let parity = build_u_parity(s, layout)?;
    let mut circuit = parity.clone();
    circuit.append(&build_cm0(alpha, layout)?)?;
    circuit.append(&build_cm1(alpha, layout)?)?;
    circuit.append(&parity)?;
    Ok(circuit)
}

/// Gates emitted for one `U_S` block.
pub fn block_gate_count(cardinality: usize) -> usize {
    let parity = 2 * cardinality.saturating_sub(1) + usize::from(cardinality >= 1);
    2 * parity + 4
}

/// A synthesized `U_f` together with the spectrum it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleBuild {
    pub spectrum: FourierSpectrum,
    pub circuit: Circuit,
    /// Subsets in the order their blocks appear in `circuit`.
    pub subset_order: Vec<SubsetMask>,
}

impl OracleBuild {
    pub fn gate_count(&self) -> usize {
        self.circuit.len()
    }
}

/// `U_f` as one `U_S(f̂(S))` block per stored coefficient, ascending by mask.
pub fn build_u_f(spectrum: &FourierSpectrum, layout: RegisterLayout) -> Result<OracleBuild> {
    let order: Vec<SubsetMask> = spectrum.iter().map(|(s, _)| s).collect();
    build_u_f_ordered(spectrum, layout, &order)
}

/// `U_f` with blocks emitted in the given order. Every stored coefficient
/// must appear exactly once.
pub fn build_u_f_ordered(
    spectrum: &FourierSpectrum,
    layout: RegisterLayout,
    order: &[SubsetMask],
) -> Result<OracleBuild> {
    if spectrum.width() != layout.work_qubits() {
        return Err(Error::WidthMismatch {
            left: spectrum.width(),
            right: layout.work_qubits(),
        });
    }
    let mut sorted: Vec<u64> = order.iter().map(|s| s.mask()).collect();
    sorted.sort_unstable();
    let stored: Vec<u64> = spectrum.iter().map(|(s, _)| s.mask()).collect();
    if sorted != stored {
        return Err(Error::InvalidConfig(
            "block order must list every stored coefficient once".into(),
        ));
    }
    let mut circuit = Circuit::new(layout);
    for &s in order {
        circuit.append(&build_u_s(s, spectrum.coefficient(s.mask()), layout)?)?;
    }
    Ok(OracleBuild {
        spectrum: spectrum.clone(),
        circuit,
        subset_order: order.to_vec(),
    })
}

/// `U_f† = U_{-f}`.
pub fn build_u_f_dagger(spectrum: &FourierSpectrum, layout: RegisterLayout) -> Result<OracleBuild> {
    build_u_f(&spectrum.negated(), layout)
}

/// Which of `U_f` and `U_f†` to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleSign {
    Forward,
    Adjoint,
}

impl OracleSign {
    fn factor(self) -> f64 {
        match self {
            OracleSign::Forward => 1.0,
            OracleSign::Adjoint => -1.0,
        }
    }
}

/// Applies `U_f` (or its adjoint) directly as a diagonal:
/// amplitude `2x + a` is multiplied by `e^{±i(1-2a)f(x)}`.
pub fn reference_oracle_apply(
    f: &FunctionTable,
    state: &mut StateVector,
    sign: OracleSign,
) -> Result<()> {
    let layout = state.layout();
    if f.width() != layout.work_qubits() {
        return Err(Error::WidthMismatch {
            left: f.width(),
            right: layout.work_qubits(),
        });
    }
    let s = sign.factor();
    for (pair, &fx) in state.amplitudes_mut().chunks_exact_mut(2).zip(f.values()) {
        let phase = Complex64::from_polar(1.0, s * fx);
        pair[0] *= phase;
        pair[1] *= phase.conj();
    }
    Ok(())
}

/// Plain-text gate list: a `layout n=<n> ancilla=0` header, then one gate per
/// line (`X q`, `P q alpha`, `CNOT c t`, `H q`).
pub fn export_gate_list(circuit: &Circuit) -> String {
    let mut out = format!(
        "layout n={} ancilla={}\n",
        circuit.layout().work_qubits(),
        ANCILLA
    );
    for g in circuit.gates() {
        writeln!(out, "{g}").expect("writing to a String cannot fail");
    }
    out
}

/// Error from [`parse_gate_list`], with the 1-based line number.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct GateListError {
    pub line: usize,
    pub message: String,
}

pub fn parse_gate_list(text: &str) -> std::result::Result<Circuit, GateListError> {
    let err = |line: usize, message: String| GateListError { line, message };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    let (_, header) = lines
        .next()
        .ok_or_else(|| err(1, "missing layout header".into()))?;
    let n = header
        .strip_prefix("layout n=")
        .and_then(|rest| rest.strip_suffix(" ancilla=0"))
        .and_then(|v| v.parse::<usize>().ok())
        .ok_or_else(|| err(1, format!("malformed header {header:?}")))?;
    let layout = RegisterLayout::new(n).map_err(|e| err(1, e.to_string()))?;
    let mut circuit = Circuit::new(layout);
    for (line, text) in lines.filter(|(_, l)| !l.is_empty()) {
        let fields: Vec<&str> = text.split_whitespace().collect();
        let qubit = |i: usize| -> std::result::Result<usize, GateListError> {
            fields
                .get(i)
                .and_then(|v| v.parse().ok())
                .ok_or_else(|| err(line, format!("bad qubit operand in {text:?}")))
        };
        let gate = match (fields[0], fields.len()) {
            ("X", 2) => Gate::X(qubit(1)?),
            ("H", 2) => Gate::H(qubit(1)?),
            ("CNOT", 3) => Gate::Cnot {
                control: qubit(1)?,
                target: qubit(2)?,
            },
            ("P", 3) => {
                let alpha = fields[2]
                    .parse::<f64>()
                    .map_err(|_| err(line, format!("bad angle in {text:?}")))?;
                Gate::P(qubit(1)?, alpha)
            }
            _ => return Err(err(line, format!("unknown gate {text:?}"))),
        };
        circuit.push(gate).map_err(|e| err(line, e.to_string()))?;
    }
    Ok(circuit)
}
