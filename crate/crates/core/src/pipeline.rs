//! End-to-end sector runs: enumerate, project, build, restrict, diagonalize.

use std::sync::Arc;
use std::thread;

use crate::error::Result;
use crate::hamiltonian::{build_hamiltonian, diagonalize, eigenvalues, restrict, HamiltonianMatrix, SpectrumResult};
use crate::model::{EnsembleSpec, Manifold, Statistics};
use crate::statespace::{enumerate_first_excited, enumerate_full, BasisSet};
use crate::symmetry::{project_orbit, SubspaceBasis};

/// Direct-product basis for the ensemble's manifold and photon cutoff.
pub fn ensemble_basis(spec: &EnsembleSpec) -> Result<Arc<BasisSet>> {
    let m = spec.molecule.level_count();
    let basis = match spec.manifold {
        Manifold::Full => enumerate_full(m, spec.n, spec.cavity.n_max)?,
        Manifold::FirstExcited => enumerate_first_excited(m, spec.molecule.m_g, spec.n)?,
    };
    Ok(Arc::new(basis))
}

#[derive(Debug, Clone)]
pub struct SectorRun {
    pub subspace: SubspaceBasis,
    pub spectrum: SpectrumResult,
}

impl SectorRun {
    pub fn statistics(&self) -> Statistics {
        self.subspace.statistics()
    }
}

fn run_sectors<T, F>(h: &HamiltonianMatrix, basis: &Arc<BasisSet>, sectors: &[Statistics], f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&HamiltonianMatrix, SubspaceBasis) -> Result<T> + Sync,
{
    // Sectors are independent; results keep the requested order.
    thread::scope(|scope| {
        let handles: Vec<_> = sectors
            .iter()
            .map(|&stats| {
                let f = &f;
                scope.spawn(move || {
                    let sub = project_orbit(basis, stats)?;
                    let hs = restrict(h, &sub)?;
                    f(&hs, sub)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|hd| hd.join().expect("sector worker panicked"))
            .collect()
    })
}

/// Spectra with photon expectations for each requested sector.
pub fn sector_spectra(spec: &EnsembleSpec, sectors: &[Statistics]) -> Result<Vec<SectorRun>> {
    let basis = ensemble_basis(spec)?;
    let h = build_hamiltonian(spec, &basis)?;
    run_sectors(&h, &basis, sectors, |hs, subspace| {
        let spectrum = diagonalize(hs, &subspace)?;
        Ok(SectorRun { subspace, spectrum })
    })
}

/// Eigenvalues only, for each requested sector.
pub fn sector_energies(spec: &EnsembleSpec, sectors: &[Statistics]) -> Result<Vec<(Statistics, Vec<f64>)>> {
    let basis = ensemble_basis(spec)?;
    let h = build_hamiltonian(spec, &basis)?;
    run_sectors(&h, &basis, sectors, |hs, sub| Ok((sub.statistics(), eigenvalues(hs)?)))
}
