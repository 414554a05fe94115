//! Direct-summation thermodynamics over a computed spectrum.
//!
//! Every quantity is measured from the spectrum's own lowest level:
//!
//! ```text
//! Q = Σ exp(-(Eᵢ - E₀) / κT)          κ = k_B/(hc)
//! U = R ⟨E'⟩ / κ                      (kJ mol⁻¹)
//! C = R (⟨E'²⟩ - ⟨E'⟩²) / (κT)²       (J mol⁻¹ K⁻¹)
//! S = U/T + R ln Q                    (J mol⁻¹ K⁻¹)
//! G = -RT ln Q                        (kJ mol⁻¹)
//! ```
//!
//! With no volume degrees of freedom, G here is the Helmholtz-type
//! −RT ln Q; adding the zero-point offset is left to the caller.

use crate::constants::{GAS_CONSTANT, KB_WAVENUMBER};
use crate::error::{Error, Result};
use crate::model::{EnsembleSpec, Statistics};
use crate::pipeline::sector_energies;

fn check_temperature(t: f64) -> Result<()> {
    if t.is_finite() && t > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveTemperature(t))
    }
}

fn ground(energies: &[f64]) -> Result<f64> {
    energies
        .iter()
        .copied()
        .min_by(f64::total_cmp)
        .ok_or(Error::EmptySpectrum)
}

pub fn partition_function(energies: &[f64], t: f64) -> Result<f64> {
    check_temperature(t)?;
    let e0 = ground(energies)?;
    let kt = KB_WAVENUMBER * t;
    Ok(energies.iter().map(|e| (-(e - e0) / kt).exp()).sum())
}

/// Thermodynamic functions at one temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermoPoint {
    pub t: f64,
    pub q: f64,
    pub u: f64,
    pub c: f64,
    pub s: f64,
    pub g: f64,
}

fn point(shifted: &[f64], t: f64) -> Result<ThermoPoint> {
    check_temperature(t)?;
    let kt = KB_WAVENUMBER * t;
    let weights: Vec<f64> = shifted.iter().map(|e| (-e / kt).exp()).collect();
    let q: f64 = weights.iter().sum();
    let mean = weights.iter().zip(shifted).map(|(w, e)| w * e).sum::<f64>() / q;
    let var = weights
        .iter()
        .zip(shifted)
        .map(|(w, e)| w * (e - mean) * (e - mean))
        .sum::<f64>()
        / q;
    let u = GAS_CONSTANT * mean / KB_WAVENUMBER;
    let c = GAS_CONSTANT * var / (kt * kt);
    let ln_q = q.ln();
    Ok(ThermoPoint {
        t,
        q,
        u: u / 1000.0,
        c,
        s: u / t + GAS_CONSTANT * ln_q,
        g: -GAS_CONSTANT * t * ln_q / 1000.0,
    })
}

pub fn thermo_point(energies: &[f64], t: f64) -> Result<ThermoPoint> {
    let e0 = ground(energies)?;
    let shifted: Vec<f64> = energies.iter().map(|e| e - e0).collect();
    point(&shifted, t)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ThermoTable {
    pub temperatures: Vec<f64>,
    pub q: Vec<f64>,
    pub u: Vec<f64>,
    pub c: Vec<f64>,
    pub s: Vec<f64>,
    pub g: Vec<f64>,
    /// Lowest level of the spectrum (cm⁻¹) that every column is measured from.
    pub ground_energy: f64,
}

impl ThermoTable {
    pub fn len(&self) -> usize {
        self.temperatures.len()
    }

    pub fn is_empty(&self) -> bool {
        self.temperatures.is_empty()
    }

    pub fn row(&self, i: usize) -> ThermoPoint {
        ThermoPoint {
            t: self.temperatures[i],
            q: self.q[i],
            u: self.u[i],
            c: self.c[i],
            s: self.s[i],
            g: self.g[i],
        }
    }

    /// Column-wise `self − baseline`; temperatures must agree.
    pub fn minus(&self, baseline: &ThermoTable) -> Result<ThermoTable> {
        if self.temperatures != baseline.temperatures {
            return Err(Error::DimensionMismatch("tables use different temperature grids".into()));
        }
        let diff = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x - y).collect();
        Ok(ThermoTable {
            temperatures: self.temperatures.clone(),
            q: diff(&self.q, &baseline.q),
            u: diff(&self.u, &baseline.u),
            c: diff(&self.c, &baseline.c),
            s: diff(&self.s, &baseline.s),
            g: diff(&self.g, &baseline.g),
            ground_energy: self.ground_energy - baseline.ground_energy,
        })
    }
}

pub fn thermo_table(energies: &[f64], grid: &[f64]) -> Result<ThermoTable> {
    if grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument("temperature grid must be strictly ascending".into()));
    }
    let e0 = ground(energies)?;
    let shifted: Vec<f64> = energies.iter().map(|e| e - e0).collect();
    let mut table = ThermoTable {
        temperatures: Vec::with_capacity(grid.len()),
        q: Vec::with_capacity(grid.len()),
        u: Vec::with_capacity(grid.len()),
        c: Vec::with_capacity(grid.len()),
        s: Vec::with_capacity(grid.len()),
        g: Vec::with_capacity(grid.len()),
        ground_energy: e0,
    };
    for &t in grid {
        let p = point(&shifted, t)?;
        table.temperatures.push(t);
        table.q.push(p.q);
        table.u.push(p.u);
        table.c.push(p.c);
        table.s.push(p.s);
        table.g.push(p.g);
    }
    Ok(table)
}

/// `tmin, tmin + step, …` up to and including `tmax` (within step/1e6).
pub fn temperature_grid(tmin: f64, tmax: f64, step: f64) -> Result<Vec<f64>> {
    check_temperature(tmin)?;
    if !(step.is_finite() && step > 0.0) || !(tmax.is_finite() && tmax >= tmin) {
        return Err(Error::InvalidArgument(format!(
            "bad temperature grid {tmin}..{tmax} step {step}"
        )));
    }
    let count = ((tmax - tmin) / step + 1e-6).floor() as usize + 1;
    Ok((0..count).map(|i| tmin + i as f64 * step).collect())
}

/// Default grid: 1 K to 1000 K in 1 K steps.
pub fn default_grid() -> Vec<f64> {
    temperature_grid(1.0, 1000.0, 1.0).expect("default grid is valid")
}

#[derive(Debug, Clone)]
pub struct SectorThermo {
    pub statistics: Statistics,
    pub table: ThermoTable,
    /// Column-wise difference from the unprojected sector.
    pub delta: ThermoTable,
    /// E₀(sector) − E₀(no projection), cm⁻¹.
    pub zero_point_shift: f64,
}

/// Runs the whole pipeline for the unprojected, bosonic and fermionic
/// sectors and tabulates each against the unprojected baseline.
pub fn sector_thermo_compare(spec: &EnsembleSpec, grid: &[f64]) -> Result<Vec<SectorThermo>> {
    let spectra = sector_energies(spec, &Statistics::ALL)?;
    compare_spectra(&spectra, grid)
}

/// Same as [`sector_thermo_compare`] for precomputed spectra. The first
/// entry is the baseline.
pub fn compare_spectra(spectra: &[(Statistics, Vec<f64>)], grid: &[f64]) -> Result<Vec<SectorThermo>> {
    let (_, base_energies) = spectra.first().ok_or(Error::EmptySpectrum)?;
    let base = thermo_table(base_energies, grid)?;
    spectra
        .iter()
        .map(|(statistics, energies)| {
            let table = thermo_table(energies, grid)?;
            let delta = table.minus(&base)?;
            Ok(SectorThermo {
                statistics: *statistics,
                zero_point_shift: delta.ground_energy,
                delta,
                table,
            })
        })
        .collect()
}
