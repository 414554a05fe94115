//! Cavity + molecules Hamiltonian on a direct-product basis, its restriction
//! to a symmetry sector, and dense diagonalization.
//!
//! H = Σᵢ E(kᵢ) + ṽ a†a + g Σᵢ D⁽ⁱ⁾ (a† + a)
//!
//! The photon ladder is truncated at the basis' largest photon number. There
//! is no dipole self-energy and no zero-point photon energy. With the RWA
//! switch on, only terms that conserve photons plus ground-to-excited
//! manifold excitations survive.

use std::sync::Arc;

use faer::Side;
use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::model::{EnsembleSpec, Statistics};
use crate::observables::{BrightnessClass, ClassThresholds, PhotonOperator};
use crate::statespace::{BasisSet, BasisState};
use crate::symmetry::SubspaceBasis;

const SYMMETRY_RTOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisTag {
    Full,
    Subspace(Statistics),
}

#[derive(Debug, Clone)]
pub struct HamiltonianMatrix {
    matrix: DMatrix<f64>,
    tag: BasisTag,
    source: Arc<BasisSet>,
}

impl HamiltonianMatrix {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn tag(&self) -> BasisTag {
        self.tag
    }

    pub fn source(&self) -> &Arc<BasisSet> {
        &self.source
    }

    /// Largest |Hᵢⱼ − Hⱼᵢ| relative to the largest entry.
    pub fn asymmetry(&self) -> f64 {
        let scale = self.matrix.amax().max(f64::MIN_POSITIVE);
        (&self.matrix - self.matrix.transpose()).amax() / scale
    }
}

fn manifold_excitation(level: u16, m_g: usize) -> i64 {
    i64::from(usize::from(level) >= m_g)
}

pub fn build_hamiltonian(spec: &EnsembleSpec, basis: &Arc<BasisSet>) -> Result<HamiltonianMatrix> {
    let model = &spec.molecule;
    let cavity = &spec.cavity;
    if basis.levels() != model.level_count() {
        return Err(Error::DimensionMismatch(format!(
            "basis has {} levels, model has {}",
            basis.levels(),
            model.level_count()
        )));
    }
    if basis.molecules() != spec.n {
        return Err(Error::DimensionMismatch(format!(
            "basis has {} molecules, ensemble has {}",
            basis.molecules(),
            spec.n
        )));
    }
    if basis.n_max() > cavity.n_max {
        return Err(Error::DimensionMismatch(format!(
            "basis holds {} photons, cavity truncates at {}",
            basis.n_max(),
            cavity.n_max
        )));
    }

    let d = basis.len();
    let m = model.level_count();
    let g = cavity.coupling_g;
    let rwa = spec.coupling.rwa;
    let mut h = DMatrix::zeros(d, d);

    for (col, state) in basis.states().iter().enumerate() {
        h[(col, col)] = state
            .occ
            .iter()
            .map(|&k| model.energies[usize::from(k)])
            .sum::<f64>()
            + cavity.photon_energy * state.photons as f64;
        if g == 0.0 {
            continue;
        }

        let n_here = state.photons;
        let photon_moves = [n_here.checked_sub(1), Some(n_here + 1)];
        for n_new in photon_moves.into_iter().flatten() {
            let ladder = (n_here.max(n_new) as f64).sqrt();
            let d_photons = n_new as i64 - n_here as i64;
            for i in 0..spec.n {
                let from = state.occ[i];
                for to in 0..m as u16 {
                    if to == from && !spec.coupling.permanent_dipoles {
                        continue;
                    }
                    let dipole = model.dipole[(usize::from(from), usize::from(to))];
                    if dipole == 0.0 {
                        continue;
                    }
                    if rwa {
                        let d_exc =
                            manifold_excitation(to, model.m_g) - manifold_excitation(from, model.m_g);
                        if d_photons + d_exc != 0 {
                            continue;
                        }
                    }
                    let mut occ = state.occ.clone();
                    occ[i] = to;
                    if let Some(row) = basis.index_of(&BasisState::new(n_new, occ)) {
                        h[(row, col)] += g * dipole * ladder;
                    }
                }
            }
        }
    }

    let out = HamiltonianMatrix {
        matrix: h,
        tag: BasisTag::Full,
        source: Arc::clone(basis),
    };
    debug_assert!(out.asymmetry() <= SYMMETRY_RTOL);
    Ok(out)
}

fn same_source(a: &Arc<BasisSet>, b: &Arc<BasisSet>) -> bool {
    Arc::ptr_eq(a, b) || (a.mode() == b.mode() && a.states() == b.states())
}

/// Bᵀ H B for the orthonormal column map B of `subspace`.
pub fn restrict(h: &HamiltonianMatrix, subspace: &SubspaceBasis) -> Result<HamiltonianMatrix> {
    if h.tag != BasisTag::Full || !same_source(&h.source, subspace.source()) {
        return Err(Error::SourceMismatch);
    }
    let tag = BasisTag::Subspace(subspace.statistics());
    if subspace.is_identity() {
        return Ok(HamiltonianMatrix {
            matrix: h.matrix.clone(),
            tag,
            source: Arc::clone(&h.source),
        });
    }
    let d = h.dim();
    let k = subspace.dim();
    // H B, one dense column per subspace column
    let mut hb = DMatrix::zeros(d, k);
    for (c, col) in subspace.columns().iter().enumerate() {
        let mut out = hb.column_mut(c);
        for &(j, x) in col {
            out.axpy(x, &h.matrix.column(j), 1.0);
        }
    }
    let mut sub = DMatrix::zeros(k, k);
    for (a, col) in subspace.columns().iter().enumerate() {
        for b in 0..k {
            sub[(a, b)] = col.iter().map(|&(i, x)| x * hb[(i, b)]).sum();
        }
    }
    // symmetrize away rounding
    let sub = (&sub + sub.transpose()) * 0.5;
    Ok(HamiltonianMatrix {
        matrix: sub,
        tag,
        source: Arc::clone(&h.source),
    })
}

/// Eigenvalues with photon-number expectation per eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumResult {
    /// Ascending, cm⁻¹.
    pub energies: Vec<f64>,
    pub photon_expectations: Vec<f64>,
    pub statistics: Statistics,
}

impl SpectrumResult {
    pub fn len(&self) -> usize {
        self.energies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.energies.is_empty()
    }

    pub fn ground_energy(&self) -> Option<f64> {
        self.energies.first().copied()
    }

    pub fn classes(&self, thresholds: &ClassThresholds) -> Vec<BrightnessClass> {
        self.photon_expectations
            .iter()
            .map(|&x| thresholds.classify(x))
            .collect()
    }

    /// Energies measured from `origin`.
    pub fn relative_to(&self, origin: f64) -> Vec<f64> {
        self.energies.iter().map(|e| e - origin).collect()
    }
}

fn check_finite(m: &DMatrix<f64>) -> Result<()> {
    if m.iter().all(|x| x.is_finite()) {
        Ok(())
    } else {
        Err(Error::NonFinite)
    }
}

fn to_faer(m: &DMatrix<f64>) -> faer::Mat<f64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Eigenvalues only, ascending.
pub fn eigenvalues(h: &HamiltonianMatrix) -> Result<Vec<f64>> {
    check_finite(&h.matrix)?;
    if h.dim() == 0 {
        return Ok(Vec::new());
    }
    let mut values = to_faer(&h.matrix).selfadjoint_eigenvalues(Side::Lower);
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Full dense symmetric eigendecomposition in the subspace's basis.
pub fn diagonalize(h: &HamiltonianMatrix, subspace: &SubspaceBasis) -> Result<SpectrumResult> {
    if h.dim() != subspace.dim() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, subspace has dimension {}",
            h.dim(),
            h.dim(),
            subspace.dim()
        )));
    }
    check_finite(&h.matrix)?;
    let statistics = subspace.statistics();
    if h.dim() == 0 {
        return Ok(SpectrumResult {
            energies: Vec::new(),
            photon_expectations: Vec::new(),
            statistics,
        });
    }
    let evd = to_faer(&h.matrix).selfadjoint_eigendecomposition(Side::Lower);
    let s = evd.s().column_vector();
    let u = evd.u();
    let mut order: Vec<usize> = (0..h.dim()).collect();
    order.sort_by(|&a, &b| s.read(a).total_cmp(&s.read(b)));

    let photons = PhotonOperator::new(subspace);
    let energies = order.iter().map(|&k| s.read(k)).collect();
    let photon_expectations = order
        .iter()
        .map(|&k| photons.expectation(|a| u.read(a, k)).max(0.0))
        .collect();
    Ok(SpectrumResult {
        energies,
        photon_expectations,
        statistics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{CavityMode, CouplingScheme, Manifold, MoleculeModel};
    use crate::statespace::{enumerate_first_excited, enumerate_full};
    use crate::symmetry::project_orbit;

    fn two_level_spec(n: usize, nu: f64, g: f64, rwa: bool) -> EnsembleSpec {
        let model = MoleculeModel::new(
            "tl",
            vec![0.0, nu],
            DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]),
            1,
        )
        .unwrap();
        EnsembleSpec::new(
            model,
            n,
            CavityMode::new(nu, 1, g).unwrap(),
            Statistics::NoPauli,
            Manifold::FirstExcited,
        )
        .unwrap()
        .with_coupling(CouplingScheme {
            rwa,
            permanent_dipoles: false,
        })
    }

    #[test]
    fn decoupled_limit_is_diagonal() {
        let spec = two_level_spec(2, 1000.0, 0.0, false);
        let basis = Arc::new(enumerate_full(2, 2, 1).unwrap());
        let h = build_hamiltonian(&spec, &basis).unwrap();
        assert!(h.matrix().iter().enumerate().all(|(k, &x)| k % (h.matrix().nrows() + 1) == 0 || x == 0.0));
        for (i, s) in basis.states().iter().enumerate() {
            let expect = s.occ.iter().map(|&k| 1000.0 * f64::from(k)).sum::<f64>() + 1000.0 * s.photons as f64;
            assert_eq!(h.matrix()[(i, i)], expect);
        }
    }

    #[test]
    fn jaynes_cummings_doublet() {
        let (nu, g) = (1681.0, 490.0);
        let spec = two_level_spec(1, nu, g, true);
        let basis = Arc::new(enumerate_first_excited(2, 1, 1).unwrap());
        let h = build_hamiltonian(&spec, &basis).unwrap();
        let sub = project_orbit(&basis, Statistics::NoPauli).unwrap();
        let spec_res = diagonalize(&restrict(&h, &sub).unwrap(), &sub).unwrap();
        assert!((spec_res.energies[0] - (nu - g)).abs() < 1e-9);
        assert!((spec_res.energies[1] - (nu + g)).abs() < 1e-9);
        for x in &spec_res.photon_expectations {
            assert!((x - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn restriction_of_identity_subspace_is_unchanged() {
        let spec = two_level_spec(2, 1000.0, 100.0, false);
        let basis = Arc::new(enumerate_full(2, 2, 1).unwrap());
        let h = build_hamiltonian(&spec, &basis).unwrap();
        let sub = project_orbit(&basis, Statistics::NoPauli).unwrap();
        let r = restrict(&h, &sub).unwrap();
        assert_eq!(r.matrix(), h.matrix());
        assert_eq!(r.tag(), BasisTag::Subspace(Statistics::NoPauli));
    }

    #[test]
    fn empty_fermion_sector_restricts_to_empty() {
        let spec = two_level_spec(3, 1000.0, 100.0, true);
        let basis = Arc::new(enumerate_first_excited(2, 1, 3).unwrap());
        let h = build_hamiltonian(&spec, &basis).unwrap();
        let sub = project_orbit(&basis, Statistics::Fermion).unwrap();
        let r = restrict(&h, &sub).unwrap();
        assert_eq!(r.dim(), 0);
        assert!(diagonalize(&r, &sub).unwrap().is_empty());
    }

    #[test]
    fn pair_fermion_sector_is_the_dark_state() {
        let nu = 1681.0;
        let spec = two_level_spec(2, nu, 490.0, true);
        let basis = Arc::new(enumerate_first_excited(2, 1, 2).unwrap());
        let h = build_hamiltonian(&spec, &basis).unwrap();
        let sub = project_orbit(&basis, Statistics::Fermion).unwrap();
        let r = restrict(&h, &sub).unwrap();
        assert_eq!(r.dim(), 1);
        assert!((r.matrix()[(0, 0)] - nu).abs() < 1e-12);
    }

    #[test]
    fn diagonal_input_gives_sorted_diagonal() {
        let basis = Arc::new(enumerate_full(3, 1, 1).unwrap());
        let sub = project_orbit(&basis, Statistics::NoPauli).unwrap();
        let diag = [5.0, -1.0, 3.0, 0.5, 7.0, 2.0];
        let h = HamiltonianMatrix {
            matrix: DMatrix::from_diagonal(&nalgebra::DVector::from_row_slice(&diag)),
            tag: BasisTag::Subspace(Statistics::NoPauli),
            source: Arc::clone(&basis),
        };
        let res = diagonalize(&h, &sub).unwrap();
        let mut sorted = diag.to_vec();
        sorted.sort_by(f64::total_cmp);
        for (a, b) in res.energies.iter().zip(&sorted) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn non_finite_entries_are_rejected() {
        let basis = Arc::new(enumerate_full(2, 1, 0).unwrap());
        let sub = project_orbit(&basis, Statistics::NoPauli).unwrap();
        let h = HamiltonianMatrix {
            matrix: DMatrix::from_element(2, 2, f64::NAN),
            tag: BasisTag::Full,
            source: Arc::clone(&basis),
        };
        assert!(matches!(diagonalize(&h, &sub), Err(Error::NonFinite)));
    }

    #[test]
    fn dimension_mismatches() {
        let spec = two_level_spec(2, 1000.0, 100.0, false);
        let wrong_n = Arc::new(enumerate_full(2, 3, 1).unwrap());
        assert!(matches!(build_hamiltonian(&spec, &wrong_n), Err(Error::DimensionMismatch(_))));
        let wrong_m = Arc::new(enumerate_full(3, 2, 1).unwrap());
        assert!(build_hamiltonian(&spec, &wrong_m).is_err());
        let too_many_photons = Arc::new(enumerate_full(2, 2, 2).unwrap());
        assert!(build_hamiltonian(&spec, &too_many_photons).is_err());

        let basis = Arc::new(enumerate_full(2, 2, 1).unwrap());
        let other = Arc::new(enumerate_first_excited(2, 1, 2).unwrap());
        let h = build_hamiltonian(&spec, &basis).unwrap();
        let sub = project_orbit(&other, Statistics::Boson).unwrap();
        assert!(matches!(restrict(&h, &sub), Err(Error::SourceMismatch)));
    }

    #[test]
    fn permanent_dipoles_enter_only_when_enabled() {
        let model = MoleculeModel::new(
            "pd",
            vec![0.0, 1000.0],
            DMatrix::from_row_slice(2, 2, &[0.5, 1.0, 1.0, 0.0]),
            1,
        )
        .unwrap();
        let spec = EnsembleSpec::new(
            model,
            1,
            CavityMode::new(1000.0, 1, 100.0).unwrap(),
            Statistics::NoPauli,
            Manifold::Full,
        )
        .unwrap();
        let basis = Arc::new(enumerate_full(2, 1, 1).unwrap());
        let g0 = basis.index_of(&BasisState::new(0, vec![0])).unwrap();
        let g1 = basis.index_of(&BasisState::new(1, vec![0])).unwrap();
        let off = build_hamiltonian(&spec, &basis).unwrap();
        assert_eq!(off.matrix()[(g0, g1)], 0.0);
        let on = build_hamiltonian(
            &spec.clone().with_coupling(CouplingScheme {
                rwa: false,
                permanent_dipoles: true,
            }),
            &basis,
        )
        .unwrap();
        assert!((on.matrix()[(g0, g1)] - 50.0).abs() < 1e-12);
        assert!(on.asymmetry() < 1e-15);
    }
}
