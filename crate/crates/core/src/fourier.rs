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

//! Fourier analysis on the Boolean cube `{0,1}^n`.
//!
//! Bit strings and subsets share one convention: bit `j` of the integer is
//! `x_j` (respectively membership of `j` in `S`). With that, the parity
//! function `χ_S(x) = (-1)^{Ŝ·x}` is the parity of `popcount(S & x)`.

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// Largest supported number of bits for dense tables.
pub const MAX_WIDTH: usize = 30;

/// Coefficients with magnitude below this are not stored in a spectrum.
pub const DROP_THRESHOLD: f64 = 1e-14;

fn check_width(n: usize) -> Result<()> {
    if n == 0 || n > MAX_WIDTH {
        return Err(Error::InvalidWidth(n));
    }
    Ok(())
}

fn check_value(n: usize, value: u64) -> Result<()> {
    check_width(n)?;
    if value >> n != 0 {
        return Err(Error::ValueOutOfRange { value, n });
    }
    Ok(())
}

fn check_same_width(left: usize, right: usize) -> Result<()> {
    if left != right {
        return Err(Error::WidthMismatch { left, right });
    }
    Ok(())
}

/// `χ_S(x)` on raw integers.
#[inline]
pub fn parity_sign(mask: u64, x: u64) -> f64 {
    if (mask & x).count_ones() & 1 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// A point `x` of the Boolean cube, stored as the integer `Σ x_j 2^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitString {
    n: usize,
    value: u64,
}

impl BitString {
    pub fn new(n: usize, value: u64) -> Result<Self> {
        check_value(n, value)?;
        Ok(Self { n, value })
    }

    /// Parses a most-significant-bit-first string such as `"1001"`.
    pub fn parse_binary(s: &str) -> Result<Self> {
        let n = s.len();
        check_width(n)?;
        let mut value = 0u64;
        for c in s.chars() {
            value <<= 1;
            match c {
                '0' => {}
                '1' => value |= 1,
                _ => return Err(Error::InvalidBinary(s.to_string())),
            }
        }
        Ok(Self { n, value })
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn bit(&self, j: usize) -> u8 {
        ((self.value >> j) & 1) as u8
    }
}

impl fmt::Display for BitString {
    /// Most significant bit first, `x_{n-1} … x_0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_binary(self.value, self.n))
    }
}

/// Formats `value` as `n` binary digits, most significant first.
pub fn format_binary(value: u64, n: usize) -> String {
    (0..n)
        .rev()
        .map(|j| if (value >> j) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// A subset `S ⊆ {0, …, n-1}` encoded as the bit string `Ŝ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    n: usize,
    mask: u64,
}

impl SubsetMask {
    pub fn new(n: usize, mask: u64) -> Result<Self> {
        check_value(n, mask)?;
        Ok(Self { n, mask })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, 0)
    }

    pub fn from_indices(n: usize, indices: &[usize]) -> Result<Self> {
        check_width(n)?;
        let mut mask = 0u64;
        for &j in indices {
            if j >= n {
                return Err(Error::IndexOutOfRange { index: j, n });
            }
            mask |= 1 << j;
        }
        Ok(Self { n, mask })
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn cardinality(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, j: usize) -> bool {
        j < self.n && (self.mask >> j) & 1 == 1
    }

    /// Elements in ascending order `j_1 < j_2 < …`.
    pub fn iter(&self) -> impl Iterator<Item = usize> {
        let mut rest = self.mask;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let j = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(j)
        })
    }

    pub fn indices(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All `2^n` subsets of `[n]`, in ascending mask order.
    pub fn all(n: usize) -> Result<impl Iterator<Item = SubsetMask>> {
        check_width(n)?;
        Ok((0..1u64 << n).map(move |mask| SubsetMask { n, mask }))
    }
}

/// Modular bit product `a·b = (Σ a_j b_j) mod 2`.
pub fn bit_product(a: BitString, b: BitString) -> Result<u8> {
    check_same_width(a.n, b.n)?;
    Ok(((a.value & b.value).count_ones() & 1) as u8)
}

/// Parity function `χ_S(x) = 1 - 2 (Ŝ·x)`.
pub fn parity(s: SubsetMask, x: BitString) -> Result<f64> {
    check_same_width(s.n, x.n)?;
    Ok(parity_sign(s.mask, x.value))
}

/// A real-valued function on `{0,1}^n`, stored densely with `values[x] = f(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FunctionTable {
    n: usize,
    values: Vec<f64>,
}

impl FunctionTable {
    pub fn new(n: usize, values: Vec<f64>) -> Result<Self> {
        check_width(n)?;
        let expected = 1usize << n;
        if values.len() != expected {
            return Err(Error::TableLength {
                expected,
                got: values.len(),
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(pos));
        }
        Ok(Self { n, values })
    }

    pub fn from_fn(n: usize, f: impl FnMut(u64) -> f64) -> Result<Self> {
        check_width(n)?;
        Self::new(n, (0..1u64 << n).map(f).collect())
    }

    pub fn constant(n: usize, c: f64) -> Result<Self> {
        Self::from_fn(n, |_| c)
    }

    /// The table of `χ_S`.
    pub fn parity(s: SubsetMask) -> Self {
        let values = (0..1u64 << s.n).map(|x| parity_sign(s.mask, x)).collect();
        Self { n: s.n, values }
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, x: u64) -> f64 {
        self.values[x as usize]
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// `⟨f, g⟩ = 2^{-n} Σ_x f(x) g(x)`.
pub fn inner_product(f: &FunctionTable, g: &FunctionTable) -> Result<f64> {
    check_same_width(f.n, g.n)?;
    let sum: f64 = f.values.iter().zip(&g.values).map(|(a, b)| a * b).sum();
    Ok(sum / f.values.len() as f64)
}

/// Sparse parity-basis coefficients `f̂(S)`; absent masks are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierSpectrum {
    n: usize,
    coeffs: BTreeMap<u64, f64>,
}

impl FourierSpectrum {
    pub fn new(n: usize) -> Result<Self> {
        check_width(n)?;
        Ok(Self {
            n,
            coeffs: BTreeMap::new(),
        })
    }

    /// Builds a spectrum from `(mask, coefficient)` pairs, summing repeats.
    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (u64, f64)>) -> Result<Self> {
        let mut spectrum = Self::new(n)?;
        for (mask, c) in pairs {
            check_value(n, mask)?;
            *spectrum.coeffs.entry(mask).or_insert(0.0) += c;
        }
        spectrum.prune();
        Ok(spectrum)
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, c| c.abs() >= DROP_THRESHOLD);
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, mask: u64) -> f64 {
        self.coeffs.get(&mask).copied().unwrap_or(0.0)
    }

    /// Stored coefficients in ascending mask order.
    pub fn iter(&self) -> impl Iterator<Item = (SubsetMask, f64)> + '_ {
        let n = self.n;
        self.coeffs
            .iter()
            .map(move |(&mask, &c)| (SubsetMask { n, mask }, c))
    }

    pub fn max_degree(&self) -> usize {
        self.coeffs
            .keys()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    /// `Σ_S f̂(S)²`, which equals `⟨f, f⟩`.
    pub fn energy(&self) -> f64 {
        self.coeffs.values().map(|c| c * c).sum()
    }

    pub fn negated(&self) -> Self {
        Self {
            n: self.n,
            coeffs: self.coeffs.iter().map(|(&m, &c)| (m, -c)).collect(),
        }
    }

    /// `f(x) = Σ_S f̂(S) χ_S(x)`.
    pub fn evaluate(&self, x: BitString) -> Result<f64> {
        check_same_width(self.n, x.n)?;
        Ok(self.evaluate_raw(x.value))
    }

    pub(crate) fn evaluate_raw(&self, x: u64) -> f64 {
        self.coeffs
            .iter()
            .map(|(&mask, &c)| c * parity_sign(mask, x))
            .sum()
    }

    /// Dense reconstruction of `f` through the inverse transform.
    pub fn to_table(&self) -> FunctionTable {
        let mut values = vec![0.0; 1 << self.n];
        for (&mask, &c) in &self.coeffs {
            values[mask as usize] = c;
        }
        walsh_hadamard_in_place(&mut values);
        FunctionTable { n: self.n, values }
    }
}

/// Unnormalized Walsh-Hadamard butterfly: `out[S] = Σ_x in[x] χ_S(x)`.
///
/// The length must be a power of two.
pub fn walsh_hadamard_in_place(data: &mut [f64]) {
    debug_assert!(data.len().is_power_of_two());
    let mut half = 1;
    while half < data.len() {
        for block in data.chunks_mut(2 * half) {
            let (lo, hi) = block.split_at_mut(half);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (s, d) = (*a + *b, *a - *b);
                *a = s;
                *b = d;
            }
        }
        half *= 2;
    }
}

/// Computes every `f̂(S) = ⟨f, χ_S⟩` directly, in `O(4^n)`.
pub fn fourier_naive(f: &FunctionTable) -> FourierSpectrum {
    let size = f.values.len();
    let coeffs = (0..size as u64)
        .map(|mask| {
            let sum: f64 = f
                .values
                .iter()
                .enumerate()
                .map(|(x, v)| v * parity_sign(mask, x as u64))
                .sum();
            (mask, sum / size as f64)
        })
        .filter(|(_, c)| c.abs() >= DROP_THRESHOLD)
        .collect();
    FourierSpectrum { n: f.n, coeffs }
}

/// Same coefficients as [`fourier_naive`] in `O(n 2^n)`.
pub fn fourier_fast(f: &FunctionTable) -> FourierSpectrum {
    let mut data = f.values.clone();
    walsh_hadamard_in_place(&mut data);
    let norm = data.len() as f64;
    let coeffs = data
        .into_iter()
        .enumerate()
        .map(|(mask, c)| (mask as u64, c / norm))
        .filter(|(_, c)| c.abs() >= DROP_THRESHOLD)
        .collect();
    FourierSpectrum { n: f.n, coeffs }
}

/// Symmetric QUBO matrix for `B(x) = Σ_{i,j} Q_ij x_i x_j`.
///
/// Row and column `i` refer to variable `x_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuboMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl QuboMatrix {
    /// Rejects matrices that are not exactly symmetric.
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let q = Self::from_rows(rows)?;
        for i in 0..q.n {
            for j in i + 1..q.n {
                let (a, b) = (q.get(i, j), q.get(j, i));
                if a != b {
                    return Err(Error::Asymmetric { i, j, a, b });
                }
            }
        }
        Ok(q)
    }

    /// Accepts any square matrix and replaces it by `(Q + Qᵀ)/2`.
    pub fn symmetrized(rows: Vec<Vec<f64>>) -> Result<Self> {
        let mut q = Self::from_rows(rows)?;
        let n = q.n;
        for i in 0..n {
            for j in i + 1..n {
                let avg = 0.5 * (q.entries[i * n + j] + q.entries[j * n + i]);
                q.entries[i * n + j] = avg;
                q.entries[j * n + i] = avg;
            }
        }
        Ok(q)
    }

    fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        check_width(n)?;
        let mut entries = Vec::with_capacity(n * n);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
            entries.extend(r);
        }
        if let Some(pos) = entries.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(pos));
        }
        Ok(Self { n, entries })
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    pub fn evaluate(&self, x: u64) -> f64 {
        let mut sum = 0.0;
        for i in (0..self.n).filter(|&i| (x >> i) & 1 == 1) {
            for j in (0..self.n).filter(|&j| (x >> j) & 1 == 1) {
                sum += self.get(i, j);
            }
        }
        sum
    }

    pub fn to_table(&self) -> FunctionTable {
        let values = (0..1u64 << self.n).map(|x| self.evaluate(x)).collect();
        FunctionTable { n: self.n, values }
    }
}

/// Closed-form spectrum of `B(x) = Σ Q_ij x_i x_j`; support has `|S| ≤ 2`.
pub fn qubo_to_fourier(q: &QuboMatrix) -> FourierSpectrum {
    let n = q.n;
    let mut pairs = Vec::with_capacity(1 + n + n * (n - 1) / 2);
    let mut constant = 0.0;
    for i in 0..n {
        constant += q.get(i, i);
        let row: f64 = (0..n).map(|j| q.get(i, j)).sum();
        pairs.push((1u64 << i, -0.5 * row));
        for j in i + 1..n {
            constant += q.get(i, j);
            pairs.push(((1u64 << i) | (1 << j), 0.5 * q.get(i, j)));
        }
    }
    pairs.push((0, 0.5 * constant));
    FourierSpectrum::from_pairs(n, pairs).expect("masks are in range by construction")
}

/// Sums of the negative and positive entries of `Q`, and `‖Q‖_{1,1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuboBounds {
    pub q_minus: f64,
    pub q_plus: f64,
    pub norm11: f64,
}

impl QuboBounds {
    /// An all-zero matrix cannot be rescaled.
    pub fn is_degenerate(&self) -> bool {
        self.norm11 == 0.0
    }
}

pub fn qubo_bounds(q: &QuboMatrix) -> QuboBounds {
    let q_plus: f64 = q.entries.iter().filter(|&&v| v > 0.0).sum();
    let q_minus: f64 = q.entries.iter().filter(|&&v| v < 0.0).sum();
    QuboBounds {
        q_minus,
        q_plus,
        norm11: q_plus - q_minus,
    }
}

/// `F(x) = Σ_I c_I Π_{i∈I} x_i` with distinct index sets `I`.
#[derive(Debug, Clone, PartialEq)]
pub struct PseudoBooleanPolynomial {
    n: usize,
    terms: BTreeMap<u64, f64>,
}

impl PseudoBooleanPolynomial {
    /// Repeated variables inside a term collapse (`x_i² = x_i`) and terms
    /// over the same index set are merged by summing coefficients.
    pub fn new<I>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<usize>, f64)>,
    {
        check_width(n)?;
        let mut merged = BTreeMap::new();
        for (pos, (indices, c)) in terms.into_iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::NonFinite(pos));
            }
            let mask = SubsetMask::from_indices(n, &indices)?.mask;
            *merged.entry(mask).or_insert(0.0) += c;
        }
        merged.retain(|_, c: &mut f64| *c != 0.0);
        Ok(Self { n, terms: merged })
    }

    pub fn width(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (SubsetMask, f64)> + '_ {
        let n = self.n;
        self.terms
            .iter()
            .map(move |(&mask, &c)| (SubsetMask { n, mask }, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn evaluate(&self, x: u64) -> f64 {
        self.terms
            .iter()
            .filter(|(&mask, _)| mask & x == mask)
            .map(|(_, &c)| c)
            .sum()
    }

    pub fn to_table(&self) -> FunctionTable {
        let values = (0..1u64 << self.n).map(|x| self.evaluate(x)).collect();
        FunctionTable { n: self.n, values }
    }

    /// Lower and upper bounds from the signed coefficient sums. The constant
    /// term contributes to both.
    pub fn coefficient_bounds(&self) -> (f64, f64) {
        let mut lower = 0.0;
        let mut upper = 0.0;
        for (&mask, &c) in &self.terms {
            if mask == 0 {
                lower += c;
                upper += c;
            } else if c < 0.0 {
                lower += c;
            } else {
                upper += c;
            }
        }
        (lower, upper)
    }
}

/// Closed-form spectrum of a pseudo-Boolean polynomial.
///
/// Each monomial `Π_{i∈I} x_i = Π_{i∈I} (1 - χ_{{i}})/2` contributes
/// `c (-1)^{|T|} 2^{-|I|}` to every `T ⊆ I`.
pub fn poly_to_fourier(p: &PseudoBooleanPolynomial) -> FourierSpectrum {
    let mut pairs = Vec::new();
    for (&set, &c) in &p.terms {
        let scaled = c / (1u64 << set.count_ones()) as f64;
        let mut sub = set;
        loop {
            let sign = if sub.count_ones() & 1 == 0 { 1.0 } else { -1.0 };
            pairs.push((sub, sign * scaled));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & set;
        }
    }
    FourierSpectrum::from_pairs(p.n, pairs).expect("masks are in range by construction")
}
