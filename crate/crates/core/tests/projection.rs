//! Projection routes against each other and against counting formulas.

use std::sync::Arc;

use nalgebra::DMatrix;
use permpol::census::{census, TABLE1_ROWS};
use permpol::symmetry::{binomial, count_full, permute_vector, projector_matrix, SparseVec};
use permpol::{
    brightness, count_first_excited, enumerate_first_excited, enumerate_full, enumerate_group, project_orbit,
    project_reference, BasisSet, Manifold, Permutation, Statistics, SubspaceBasis,
};

const SECTORS: [Statistics; 2] = [Statistics::Boson, Statistics::Fermion];

/// Reference counts: (m, m_g, n, [none, boson, fermion] states, [none, boson, fermion] bright).
const TABLE1: [(usize, usize, usize, [u64; 3], [u64; 3]); 27] = [
    (2, 1, 2, [3, 2, 1], [1, 1, 0]),
    (2, 1, 3, [4, 2, 0], [1, 1, 0]),
    (2, 1, 4, [5, 2, 0], [1, 1, 0]),
    (5, 1, 2, [9, 5, 4], [1, 1, 0]),
    (5, 1, 3, [13, 5, 0], [1, 1, 0]),
    (5, 1, 4, [17, 5, 0], [1, 1, 0]),
    (5, 2, 2, [16, 9, 7], [4, 3, 1]),
    (5, 2, 3, [44, 13, 3], [8, 4, 0]),
    (5, 2, 4, [112, 17, 0], [16, 5, 0]),
    (5, 3, 2, [21, 12, 9], [9, 6, 3]),
    (5, 3, 3, [81, 22, 7], [27, 10, 1]),
    (5, 3, 4, [297, 35, 2], [81, 15, 0]),
    (5, 4, 2, [24, 14, 10], [16, 10, 6]),
    (5, 4, 3, [112, 30, 10], [64, 20, 4]),
    (5, 4, 4, [512, 55, 5], [256, 35, 1]),
    (10, 1, 2, [19, 10, 9], [1, 1, 0]),
    (10, 1, 3, [28, 10, 0], [1, 1, 0]),
    (10, 1, 4, [37, 10, 0], [1, 1, 0]),
    (10, 3, 2, [51, 27, 24], [9, 6, 3]),
    (10, 3, 3, [216, 52, 22], [27, 10, 1]),
    (10, 3, 4, [837, 85, 7], [81, 15, 0]),
    (10, 5, 2, [75, 40, 35], [25, 15, 10]),
    (10, 5, 3, [500, 110, 60], [125, 35, 10]),
    (10, 5, 4, [3125, 245, 55], [625, 70, 5]),
    (10, 7, 2, [91, 49, 42], [49, 28, 21]),
    (10, 7, 3, [784, 168, 98], [343, 84, 35]),
    (10, 7, 4, [6517, 462, 140], [2401, 210, 35]),
];

fn closed_form_bright(m_g: usize, n: usize, stats: Statistics) -> u128 {
    match stats {
        Statistics::NoPauli => (m_g as u128).pow(n as u32),
        Statistics::Boson => binomial(m_g + n - 1, n),
        Statistics::Fermion => binomial(m_g, n),
    }
}

#[test]
fn table1_rows_are_the_census_rows() {
    let keys: Vec<_> = TABLE1.iter().map(|&(m, g, n, _, _)| (m, g, n)).collect();
    assert_eq!(keys, TABLE1_ROWS.to_vec());
}

#[test]
fn table1_counts_from_projection_and_closed_forms() {
    for &(m, m_g, n, states, bright) in &TABLE1 {
        let rows = census(m, m_g, n, Manifold::FirstExcited, 1, &Statistics::ALL).unwrap();
        for (k, row) in rows.iter().enumerate() {
            let ctx = format!("m={m} m_g={m_g} n={n} {}", row.statistics);
            assert_eq!(row.states, states[k], "{ctx} states");
            assert_eq!(row.bright, bright[k], "{ctx} bright");
            assert_eq!(count_first_excited(m, m_g, n, row.statistics).unwrap(), u128::from(states[k]), "{ctx}");
            assert_eq!(closed_form_bright(m_g, n, row.statistics), u128::from(bright[k]), "{ctx}");
        }
        assert_eq!(enumerate_first_excited(m, m_g, n).unwrap().len() as u64, states[0]);
    }
}

#[test]
fn full_space_dimension_formulas() {
    for m in 2..=6 {
        for n in 1..=4 {
            for n_max in 0..=1 {
                let basis = Arc::new(enumerate_full(m, n, n_max).unwrap());
                for stats in SECTORS {
                    let dim = project_orbit(&basis, stats).unwrap().dim() as u128;
                    assert_eq!(dim, count_full(m, n, n_max, stats), "m={m} n={n} n_max={n_max} {stats}");
                }
            }
        }
    }
}

#[test]
fn water_sized_space_both_routes() {
    let basis = Arc::new(enumerate_full(10, 3, 1).unwrap());
    assert_eq!(basis.len(), 2000);
    for (stats, expect) in [(Statistics::Boson, 440), (Statistics::Fermion, 240)] {
        assert_eq!(project_orbit(&basis, stats).unwrap().dim(), expect);
        assert_eq!(project_reference(&basis, stats).unwrap().dim(), expect);
    }
}

fn dense_cols(sub: &SubspaceBasis) -> DMatrix<f64> {
    sub.to_dense()
}

/// Frobenius norm of (I − Q Qᵀ) R: bounds the sine of the largest
/// principal angle between span(R) and span(Q) for orthonormal Q, R.
fn residual_outside(q: &DMatrix<f64>, r: &DMatrix<f64>) -> f64 {
    (r - q * (q.transpose() * r)).norm()
}

fn bases_small() -> Vec<Arc<BasisSet>> {
    let mut out = Vec::new();
    for m in 2..=5 {
        for n in 1..=4 {
            out.push(Arc::new(enumerate_full(m, n, 1).unwrap()));
            for m_g in 1..m {
                out.push(Arc::new(enumerate_first_excited(m, m_g, n).unwrap()));
            }
        }
    }
    out
}

#[test]
fn orbit_and_reference_span_the_same_subspace() {
    for basis in bases_small() {
        for stats in SECTORS {
            let orbit = project_orbit(&basis, stats).unwrap();
            let reference = project_reference(&basis, stats).unwrap();
            let ctx = format!("m={} n={} {:?} {stats}", basis.levels(), basis.molecules(), basis.mode());
            assert_eq!(orbit.dim(), reference.dim(), "{ctx}");
            if orbit.dim() == 0 {
                continue;
            }
            let q = dense_cols(&orbit);
            let r = dense_cols(&reference);
            // every reference column lies in the orbit span
            for c in 0..r.ncols() {
                let col = r.column(c).into_owned();
                let proj = q.transpose() * &col;
                assert!((proj.norm() - 1.0).abs() < 1e-10, "{ctx} column {c}");
            }
            assert!(residual_outside(&q, &r) < 1e-8, "{ctx}");
            assert!(residual_outside(&r, &q) < 1e-8, "{ctx}");
        }
    }
}

fn max_offdiag_gram(sub: &SubspaceBasis) -> f64 {
    let b = sub.to_dense();
    let gram = b.transpose() * &b;
    (gram - DMatrix::identity(sub.dim(), sub.dim())).amax()
}

#[test]
fn columns_are_orthonormal_on_both_routes() {
    for basis in bases_small() {
        for stats in SECTORS {
            for sub in [project_orbit(&basis, stats).unwrap(), project_reference(&basis, stats).unwrap()] {
                if sub.dim() > 0 {
                    assert!(max_offdiag_gram(&sub) < 1e-10);
                }
                for c in 0..sub.dim() {
                    assert!(sub.column_photons(c).is_some());
                }
            }
        }
    }
}

fn transpositions(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            out.push(Permutation::transposition(n, i, j));
        }
    }
    out
}

fn sorted(mut v: SparseVec) -> SparseVec {
    v.sort_by_key(|&(i, _)| i);
    v
}

#[test]
fn orbit_columns_are_exact_symmetry_eigenvectors() {
    for basis in bases_small() {
        for stats in SECTORS {
            let sub = project_orbit(&basis, stats).unwrap();
            for t in transpositions(basis.molecules()) {
                let sign = stats.character(t.parity());
                for col in sub.columns() {
                    let image = permute_vector(&basis, &t, col).unwrap();
                    let expect: SparseVec = sorted(col.iter().map(|&(i, x)| (i, sign * x)).collect());
                    // exact: same amplitudes, no tolerance
                    assert_eq!(image, expect);
                }
            }
        }
    }
}

#[test]
fn reference_columns_are_symmetry_eigenvectors() {
    for basis in bases_small() {
        for stats in SECTORS {
            let sub = project_reference(&basis, stats).unwrap();
            for perm in enumerate_group(basis.molecules()).unwrap() {
                let sign = stats.character(perm.parity());
                for col in sub.columns() {
                    let image = permute_vector(&basis, &perm, col).unwrap();
                    let expect = sorted(col.iter().map(|&(i, x)| (i, sign * x)).collect());
                    assert_eq!(image.len(), expect.len());
                    for (a, b) in image.iter().zip(&expect) {
                        assert_eq!(a.0, b.0);
                        assert!((a.1 - b.1).abs() < 1e-12);
                    }
                }
            }
        }
    }
}

#[test]
fn boson_and_fermion_sectors_are_orthogonal() {
    for basis in bases_small().into_iter().filter(|b| b.molecules() > 1) {
        let b = project_orbit(&basis, Statistics::Boson).unwrap().to_dense();
        let f = project_reference(&basis, Statistics::Fermion).unwrap().to_dense();
        if f.ncols() > 0 {
            assert!((b.transpose() * f).amax() < 1e-12);
        }
    }
}

#[test]
fn two_molecules_split_into_two_irreps() {
    for basis in bases_small().into_iter().filter(|b| b.molecules() == 2) {
        let nb = project_orbit(&basis, Statistics::Boson).unwrap().dim();
        let nf = project_orbit(&basis, Statistics::Fermion).unwrap().dim();
        assert_eq!(nb + nf, basis.len());
    }
}

#[test]
fn projector_is_idempotent_and_sectors_annihilate() {
    for m in 2..=3 {
        for n in 1..=4 {
            let basis = enumerate_full(m, n, 1).unwrap();
            let pb = projector_matrix(&basis, Statistics::Boson).unwrap();
            let pf = projector_matrix(&basis, Statistics::Fermion).unwrap();
            assert!((&pb * &pb - &pb).amax() < 1e-12);
            assert!((&pf * &pf - &pf).amax() < 1e-12);
            // S1 is trivial, so both projectors are the identity for n = 1
            if n > 1 {
                assert!((&pb * &pf).amax() < 1e-12);
                assert!((&pf * &pb).amax() < 1e-12);
            }
            // traces are the sector dimensions
            assert!((pb.trace() - count_full(m, n, 1, Statistics::Boson) as f64).abs() < 1e-9);
            assert!((pf.trace() - count_full(m, n, 1, Statistics::Fermion) as f64).abs() < 1e-9);
        }
    }
}

#[test]
fn brightness_closed_forms_in_full_space() {
    // every column with one photon contributes 1; with n_max = 1 that is
    // exactly the second half of the sector
    for m in 2..=4 {
        for n in 1..=3 {
            let basis = Arc::new(enumerate_full(m, n, 1).unwrap());
            for stats in SECTORS {
                let sub = project_orbit(&basis, stats).unwrap();
                let r = brightness(&sub);
                assert!((2.0 * r.trace_nph - count_full(m, n, 1, stats) as f64).abs() < 1e-9);
            }
        }
    }
}
