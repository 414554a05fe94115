//! Physical constants shared by the numeric core.
//!
//! Energies are carried in cm⁻¹ everywhere; the only conversions needed are
//! between wavenumbers and temperature, and between wavenumbers and molar
//! energy.

/// k_B / (h c) in cm⁻¹ K⁻¹ (CODATA).
pub const KB_WAVENUMBER: f64 = 0.695_034_800;

/// Molar gas constant, J mol⁻¹ K⁻¹ (CODATA, exact).
pub const GAS_CONSTANT: f64 = 8.314_462_618_153_24;

/// N_A h c: molar energy of one cm⁻¹, in J mol⁻¹.
pub const MOLAR_WAVENUMBER: f64 = GAS_CONSTANT / KB_WAVENUMBER;

/// Largest basis dimension any enumeration will produce unless overridden.
pub const DEFAULT_DIM_CAP: usize = 10_000_000;

/// Largest molecule count for which the full permutation group is enumerated.
pub const MAX_GROUP_DEGREE: usize = 8;
