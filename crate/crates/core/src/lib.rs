//! Permutation-symmetry-resolved state spaces of n identical molecules in a
//! single-mode cavity.
//!
//! The crate enumerates the direct-product basis |N⟩|k₁⟩…|kₙ⟩, projects it
//! onto the bosonic and fermionic irreps of Sₙ, counts allowed and bright
//! states, diagonalizes the cavity Hamiltonian in each sector and tabulates
//! direct-summation thermodynamics.

pub mod census;
pub mod constants;
pub mod error;
pub mod hamiltonian;
pub mod model;
pub mod observables;
pub mod pipeline;
pub mod statespace;
pub mod symmetry;
pub mod thermo;

pub use error::{Error, Result};
pub use hamiltonian::{build_hamiltonian, diagonalize, restrict, HamiltonianMatrix, SpectrumResult};
pub use model::{
    load_model, save_model, CavityMode, CouplingScheme, EnsembleSpec, Manifold, MoleculeModel, Statistics,
};
pub use observables::{brightness, photon_expectation, photon_matrix, BrightnessClass, BrightnessReport};
pub use statespace::{enumerate_first_excited, enumerate_full, BasisSet, BasisState};
pub use symmetry::{count_first_excited, enumerate_group, project_orbit, project_reference, Permutation, SubspaceBasis};
pub use thermo::{partition_function, thermo_table, ThermoTable};
