//! Photon-number operator a†a restricted to a symmetry-adapted subspace,
//! brightness accounting, and eigenstate classification.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::symmetry::SubspaceBasis;

const NORM_TOL: f64 = 1e-8;

/// Nonzero entries (row, col, value) of the photon-number matrix in a
/// subspace, both triangles included.
#[derive(Debug, Clone, PartialEq)]
pub struct PhotonOperator {
    dim: usize,
    entries: Vec<(usize, usize, f64)>,
}

impl PhotonOperator {
    pub fn new(subspace: &SubspaceBasis) -> Self {
        let source = subspace.source();
        // basis index -> (column, amplitude)
        let mut at: BTreeMap<usize, Vec<(usize, f64)>> = BTreeMap::new();
        for (c, col) in subspace.columns().iter().enumerate() {
            for &(i, x) in col {
                if source.state(i).photons > 0 {
                    at.entry(i).or_default().push((c, x));
                }
            }
        }
        let mut acc: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        for (i, cols) in &at {
            let photons = source.state(*i).photons as f64;
            for &(a, xa) in cols {
                for &(b, xb) in cols {
                    *acc.entry((a, b)).or_insert(0.0) += xa * xb * photons;
                }
            }
        }
        PhotonOperator {
            dim: subspace.dim(),
            entries: acc.into_iter().map(|((a, b), v)| (a, b, v)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trace(&self) -> f64 {
        self.entries
            .iter()
            .filter(|(a, b, _)| a == b)
            .map(|&(_, _, v)| v)
            .sum()
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries.iter().all(|(a, b, _)| a == b)
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for &(a, b, v) in &self.entries {
            m[(a, b)] = v;
        }
        m
    }

    /// ⟨v|N|v⟩ for coefficients `v` over the subspace columns.
    pub fn expectation(&self, v: impl Fn(usize) -> f64) -> f64 {
        self.entries.iter().map(|&(a, b, x)| v(a) * x * v(b)).sum()
    }
}

/// Bᵀ N B for the column map B of `subspace`.
pub fn photon_matrix(subspace: &SubspaceBasis) -> DMatrix<f64> {
    PhotonOperator::new(subspace).to_dense()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrightnessReport {
    /// Tr(N) over the subspace: the number of bright basis functions.
    pub trace_nph: f64,
    pub dim: usize,
    pub bright_ratio: f64,
}

impl BrightnessReport {
    /// Trace rounded to the nearest integer; exact for orbit-built subspaces.
    pub fn bright_count(&self) -> u64 {
        self.trace_nph.round() as u64
    }
}

pub fn brightness(subspace: &SubspaceBasis) -> BrightnessReport {
    let source = subspace.source();
    let trace_nph: f64 = subspace
        .columns()
        .iter()
        .flat_map(|col| col.iter())
        .map(|&(i, x)| x * x * source.state(i).photons as f64)
        .sum();
    let dim = subspace.dim();
    let bright_ratio = if dim == 0 { 0.0 } else { trace_nph / dim as f64 };
    BrightnessReport {
        trace_nph,
        dim,
        bright_ratio,
    }
}

/// ⟨ψ|a†a|ψ⟩ for a unit-norm state given by its subspace coefficients.
pub fn photon_expectation(subspace: &SubspaceBasis, coeffs: &[f64]) -> Result<f64> {
    if coeffs.len() != subspace.dim() {
        return Err(Error::DimensionMismatch(format!(
            "{} coefficients for a {}-dimensional subspace",
            coeffs.len(),
            subspace.dim()
        )));
    }
    let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
    if (norm - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm });
    }
    let source = subspace.source();
    let mut psi = vec![0.0; source.len()];
    for (col, &c) in subspace.columns().iter().zip(coeffs) {
        for &(i, x) in col {
            psi[i] += c * x;
        }
    }
    Ok(psi
        .iter()
        .enumerate()
        .map(|(i, a)| a * a * source.state(i).photons as f64)
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BrightnessClass {
    /// Essentially no photon content.
    Dark,
    /// Mixed light-matter character.
    Polaritonic,
    /// Essentially a cavity photon.
    Photonic,
}

impl BrightnessClass {
    pub fn as_str(self) -> &'static str {
        match self {
            BrightnessClass::Dark => "dark",
            BrightnessClass::Polaritonic => "polaritonic",
            BrightnessClass::Photonic => "photonic",
        }
    }
}

impl fmt::Display for BrightnessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassThresholds {
    pub dark_below: f64,
    pub photonic_above: f64,
}

impl Default for ClassThresholds {
    fn default() -> Self {
        ClassThresholds {
            dark_below: 0.1,
            photonic_above: 0.9,
        }
    }
}

impl ClassThresholds {
    pub fn classify(&self, expectation: f64) -> BrightnessClass {
        if expectation < self.dark_below {
            BrightnessClass::Dark
        } else if expectation > self.photonic_above {
            BrightnessClass::Photonic
        } else {
            BrightnessClass::Polaritonic
        }
    }
}
