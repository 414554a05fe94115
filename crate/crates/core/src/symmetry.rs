//! Permutations of the molecular labels and projection of the direct-product
//! basis onto the bosonic [n¹] and fermionic [1ⁿ] irreps of Sₙ.
//!
//! Two routes produce the same subspace:
//!
//! * [`project_reference`] applies the group-averaged projector
//!   P = (1/h) Σ_R χ(R) R to every basis vector and keeps the linearly
//!   independent results by Gram-Schmidt with a fixed residual threshold.
//! * [`project_orbit`] builds one column per permutation orbit directly
//!   (normalized symmetric sum, or signed sum over all-distinct tuples).
//!
//! The reference route exists to validate the orbit route and is capped at
//! n = 8.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use itertools::Itertools;
use nalgebra::DMatrix;

use crate::constants::MAX_GROUP_DEGREE;
use crate::error::{Error, Result};
use crate::model::Statistics;
use crate::statespace::{BasisSet, BasisState};

/// Residual norm above which a projected vector counts as independent.
pub const RANK_THRESHOLD: f64 = 1e-10;

/// Upper bound on n!·D for the reference projection.
pub const REFERENCE_WORK_CAP: u128 = 50_000_000;

/// Sparse vector over basis indices, sorted by index.
pub type SparseVec = Vec<(usize, f64)>;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    mapping: Vec<usize>,
    parity: i8,
}

impl Permutation {
    /// `mapping[i]` is the slot that molecule `i` is moved to.
    pub fn new(mapping: Vec<usize>) -> Result<Self> {
        let n = mapping.len();
        let mut seen = vec![false; n];
        for &t in &mapping {
            if t >= n || std::mem::replace(&mut seen[t], true) {
                return Err(Error::InvalidArgument(format!("{mapping:?} is not a permutation")));
            }
        }
        let parity = cycle_parity(&mapping);
        Ok(Permutation { mapping, parity })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            mapping: (0..n).collect(),
            parity: 1,
        }
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut mapping: Vec<usize> = (0..n).collect();
        mapping.swap(i, j);
        let parity = if i == j { 1 } else { -1 };
        Permutation { mapping, parity }
    }

    pub fn mapping(&self) -> &[usize] {
        &self.mapping
    }

    pub fn parity(&self) -> i8 {
        self.parity
    }

    pub fn degree(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_identity(&self) -> bool {
        self.mapping.iter().enumerate().all(|(i, &t)| i == t)
    }

    /// Moves the level of molecule `i` into slot `mapping[i]`; photons stay.
    pub fn act(&self, state: &BasisState) -> BasisState {
        let mut occ = vec![0u16; state.occ.len()];
        for (i, &t) in self.mapping.iter().enumerate() {
            occ[t] = state.occ[i];
        }
        BasisState::new(state.photons, occ)
    }
}

/// Parity from the cycle structure: (-1)^(n - #cycles).
fn cycle_parity(mapping: &[usize]) -> i8 {
    let n = mapping.len();
    let mut visited = vec![false; n];
    let mut cycles = 0;
    for start in 0..n {
        if visited[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !visited[i] {
            visited[i] = true;
            i = mapping[i];
        }
    }
    if (n - cycles) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// All n! elements of Sₙ, identity first.
pub fn enumerate_group(n: usize) -> Result<Vec<Permutation>> {
    if n > MAX_GROUP_DEGREE {
        return Err(Error::GroupCap {
            n,
            cap: MAX_GROUP_DEGREE,
        });
    }
    Ok((0..n)
        .permutations(n)
        .map(|mapping| {
            let parity = cycle_parity(&mapping);
            Permutation { mapping, parity }
        })
        .collect())
}

/// Orthonormal symmetry-adapted basis, stored as sparse columns over the
/// indices of its source [`BasisSet`].
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    source: Arc<BasisSet>,
    columns: Vec<SparseVec>,
    statistics: Statistics,
}

impl SubspaceBasis {
    pub fn source(&self) -> &Arc<BasisSet> {
        &self.source
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn column(&self, c: usize) -> &SparseVec {
        &self.columns[c]
    }

    pub fn statistics(&self) -> Statistics {
        self.statistics
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn is_identity(&self) -> bool {
        self.statistics == Statistics::NoPauli
    }

    /// D × dim matrix whose columns are the basis vectors.
    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut b = DMatrix::zeros(self.source.len(), self.dim());
        for (c, col) in self.columns.iter().enumerate() {
            for &(i, v) in col {
                b[(i, c)] = v;
            }
        }
        b
    }

    /// The photon number shared by every state in the column's support, or
    /// `None` if the support spans several photon numbers.
    pub fn column_photons(&self, c: usize) -> Option<usize> {
        let mut photons = self.columns[c].iter().map(|&(i, _)| self.source.state(i).photons);
        let first = photons.next()?;
        photons.all(|p| p == first).then_some(first)
    }

    fn identity(source: Arc<BasisSet>) -> Self {
        let columns = (0..source.len()).map(|i| vec![(i, 1.0)]).collect();
        SubspaceBasis {
            source,
            columns,
            statistics: Statistics::NoPauli,
        }
    }
}

/// Applies a permutation to a sparse vector over `basis`.
pub fn permute_vector(basis: &BasisSet, perm: &Permutation, v: &[(usize, f64)]) -> Result<SparseVec> {
    let mut out = Vec::with_capacity(v.len());
    for &(i, x) in v {
        let j = basis
            .index_of(&perm.act(basis.state(i)))
            .ok_or(Error::NotPermutationClosed)?;
        out.push((j, x));
    }
    out.sort_unstable_by_key(|&(j, _)| j);
    Ok(out)
}

fn reference_work(basis: &BasisSet) -> Result<u128> {
    let n = basis.molecules();
    if n > MAX_GROUP_DEGREE {
        return Err(Error::GroupCap {
            n,
            cap: MAX_GROUP_DEGREE,
        });
    }
    let h: u128 = (1..=n as u128).product();
    let work = h * basis.len() as u128;
    if work > REFERENCE_WORK_CAP {
        return Err(Error::ComputeCap {
            work,
            cap: REFERENCE_WORK_CAP,
        });
    }
    Ok(work)
}

/// Image of every basis index under every group element: `table[g][i]`.
fn action_table(basis: &BasisSet, group: &[Permutation]) -> Result<Vec<Vec<usize>>> {
    group
        .iter()
        .map(|perm| {
            basis
                .states()
                .iter()
                .map(|s| basis.index_of(&perm.act(s)).ok_or(Error::NotPermutationClosed))
                .collect()
        })
        .collect()
}

/// Dense matrix of P = (1/h) Σ_R χ(R) R over `basis`.
pub fn projector_matrix(basis: &BasisSet, statistics: Statistics) -> Result<DMatrix<f64>> {
    let d = basis.len();
    if statistics == Statistics::NoPauli {
        return Ok(DMatrix::identity(d, d));
    }
    reference_work(basis)?;
    let group = enumerate_group(basis.molecules())?;
    let table = action_table(basis, &group)?;
    let h = group.len() as f64;
    let mut p = DMatrix::zeros(d, d);
    for (perm, images) in group.iter().zip(&table) {
        let chi = statistics.character(perm.parity());
        for (j, &i) in images.iter().enumerate() {
            p[(i, j)] += chi / h;
        }
    }
    Ok(p)
}

fn sparse_dot(a: &[(usize, f64)], b: &HashMap<usize, f64>) -> f64 {
    a.iter().map(|&(i, x)| x * b.get(&i).copied().unwrap_or(0.0)).sum()
}

/// Projects every basis vector with the group-averaged projector and keeps
/// an orthonormal set spanning the results.
pub fn project_reference(basis: &Arc<BasisSet>, statistics: Statistics) -> Result<SubspaceBasis> {
    if statistics == Statistics::NoPauli {
        return Ok(SubspaceBasis::identity(Arc::clone(basis)));
    }
    if basis.is_empty() {
        return Err(Error::InvalidArgument("empty basis".into()));
    }
    reference_work(basis)?;
    let group = enumerate_group(basis.molecules())?;
    let table = action_table(basis, &group)?;
    let characters: Vec<i64> = group
        .iter()
        .map(|p| statistics.character(p.parity()) as i64)
        .collect();
    let h = group.len() as f64;

    let mut accepted: Vec<SparseVec> = Vec::new();
    // basis index -> accepted columns with support there
    let mut touching: Vec<Vec<usize>> = vec![Vec::new(); basis.len()];
    let mut counts: BTreeMap<usize, i64> = BTreeMap::new();

    for j in 0..basis.len() {
        counts.clear();
        for (images, &chi) in table.iter().zip(&characters) {
            *counts.entry(images[j]).or_insert(0) += chi;
        }
        let mut residual: HashMap<usize, f64> = counts
            .iter()
            .filter(|&(_, &c)| c != 0)
            .map(|(&i, &c)| (i, c as f64 / h))
            .collect();
        if residual.is_empty() {
            continue;
        }

        // Classical Gram-Schmidt, applied twice. Only columns sharing support
        // with the residual have nonzero overlap.
        for _ in 0..2 {
            let mut overlapping: Vec<usize> = residual
                .keys()
                .flat_map(|&i| touching[i].iter().copied())
                .collect();
            overlapping.sort_unstable();
            overlapping.dedup();
            let coeffs: Vec<f64> = overlapping
                .iter()
                .map(|&q| sparse_dot(&accepted[q], &residual))
                .collect();
            for (&q, &c) in overlapping.iter().zip(&coeffs) {
                for &(i, x) in &accepted[q] {
                    *residual.entry(i).or_insert(0.0) -= c * x;
                }
            }
        }

        let norm = residual.values().map(|x| x * x).sum::<f64>().sqrt();
        if norm > RANK_THRESHOLD {
            let mut col: SparseVec = residual
                .into_iter()
                .filter(|&(_, x)| x != 0.0)
                .map(|(i, x)| (i, x / norm))
                .collect();
            col.sort_unstable_by_key(|&(i, _)| i);
            let id = accepted.len();
            for &(i, _) in &col {
                touching[i].push(id);
            }
            accepted.push(col);
        }
    }

    Ok(SubspaceBasis {
        source: Arc::clone(basis),
        columns: accepted,
        statistics,
    })
}

/// Number of inversions modulo 2 of a sequence of distinct values: the
/// parity of the permutation that sorts it.
fn sorting_parity(occ: &[u16]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..occ.len() {
        for j in (i + 1)..occ.len() {
            if occ[i] > occ[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Number of distinct rearrangements of a sorted tuple.
fn orbit_size(sorted: &[u16]) -> u128 {
    let factorial = |k: usize| (1..=k as u128).product::<u128>();
    let denom: u128 = sorted
        .iter()
        .dedup_with_count()
        .map(|(count, _)| factorial(count))
        .product();
    factorial(sorted.len()) / denom
}

/// Builds the symmetry-adapted basis one permutation orbit at a time.
///
/// Boson columns are uniform sums over each orbit; fermion columns are
/// sums signed by the parity of the sorting permutation, and orbits with a
/// repeated level are skipped. Columns come out ordered by photon number,
/// then by sorted level tuple.
pub fn project_orbit(basis: &Arc<BasisSet>, statistics: Statistics) -> Result<SubspaceBasis> {
    if statistics == Statistics::NoPauli {
        return Ok(SubspaceBasis::identity(Arc::clone(basis)));
    }
    let mut orbits: BTreeMap<(usize, Vec<u16>), Vec<usize>> = BTreeMap::new();
    for (i, s) in basis.states().iter().enumerate() {
        let mut key = s.occ.clone();
        key.sort_unstable();
        orbits.entry((s.photons, key)).or_default().push(i);
    }

    let mut columns = Vec::new();
    for ((_, rep), members) in &orbits {
        if members.len() as u128 != orbit_size(rep) {
            return Err(Error::NotPermutationClosed);
        }
        match statistics {
            Statistics::Boson => {
                let amp = 1.0 / (members.len() as f64).sqrt();
                columns.push(members.iter().map(|&i| (i, amp)).collect());
            }
            Statistics::Fermion => {
                if rep.windows(2).any(|w| w[0] == w[1]) {
                    continue;
                }
                let amp = 1.0 / (members.len() as f64).sqrt();
                columns.push(
                    members
                        .iter()
                        .map(|&i| (i, f64::from(sorting_parity(&basis.state(i).occ)) * amp))
                        .collect(),
                );
            }
            Statistics::NoPauli => unreachable!(),
        }
    }
    Ok(SubspaceBasis {
        source: Arc::clone(basis),
        columns,
        statistics,
    })
}

/// Binomial coefficient; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// Closed-form dimension of the first excitation manifold in each sector.
pub fn count_first_excited(m: usize, m_g: usize, n: usize, statistics: Statistics) -> Result<u128> {
    if m_g < 1 || m_g >= m || n < 1 {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= m_g < m and n >= 1, got m = {m}, m_g = {m_g}, n = {n}"
        )));
    }
    let excited = (m - m_g) as u128;
    Ok(match statistics {
        Statistics::NoPauli => crate::statespace::first_excited_dim(m, m_g, n),
        Statistics::Boson => binomial(m_g + n - 1, n) + excited * binomial(m_g + n - 2, n - 1),
        Statistics::Fermion => binomial(m_g, n) + excited * binomial(m_g, n - 1),
    })
}

/// Closed-form dimension of the full space with photon numbers `0..=n_max`.
pub fn count_full(m: usize, n: usize, n_max: usize, statistics: Statistics) -> u128 {
    let blocks = n_max as u128 + 1;
    blocks
        * match statistics {
            Statistics::NoPauli => (m as u128).pow(n as u32),
            Statistics::Boson => binomial(m + n - 1, n),
            Statistics::Fermion => binomial(m, n),
        }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statespace::{enumerate_first_excited, enumerate_full};

    /// Parity by counting adjacent swaps in a bubble sort of the mapping.
    fn bubble_parity(mapping: &[usize]) -> i8 {
        let mut v = mapping.to_vec();
        let mut swaps = 0;
        for i in 0..v.len() {
            for j in 0..v.len() - 1 - i {
                if v[j] > v[j + 1] {
                    v.swap(j, j + 1);
                    swaps += 1;
                }
            }
        }
        if swaps % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn s2_elements_and_characters() {
        let g = enumerate_group(2).unwrap();
        assert_eq!(g.len(), 2);
        assert!(g[0].is_identity());
        assert_eq!(g[0].parity(), 1);
        assert_eq!(g[1].mapping(), &[1, 0]);
        assert_eq!(g[1].parity(), -1);
    }

    #[test]
    fn s1_is_trivial() {
        let g = enumerate_group(1).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].parity(), 1);
    }

    #[test]
    fn s3_parities_match_bubble_sort() {
        let g = enumerate_group(3).unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g.iter().filter(|p| p.parity() == -1).count(), 3);
        for n in 1..=6 {
            let g = enumerate_group(n).unwrap();
            assert_eq!(g.len(), (1..=n).product::<usize>());
            for p in &g {
                assert_eq!(p.parity(), bubble_parity(p.mapping()));
            }
            let distinct: std::collections::HashSet<_> = g.iter().map(|p| p.mapping().to_vec()).collect();
            assert_eq!(distinct.len(), g.len());
        }
    }

    #[test]
    fn group_cap() {
        assert!(matches!(enumerate_group(9), Err(Error::GroupCap { n: 9, cap: 8 })));
        assert_eq!(enumerate_group(8).unwrap().len(), 40320);
    }

    #[test]
    fn transposition_acts_on_molecules_only() {
        let t = Permutation::transposition(2, 0, 1);
        let s = BasisState::new(0, vec![0, 1]);
        assert_eq!(t.act(&s), BasisState::new(0, vec![1, 0]));
        assert!(Permutation::new(vec![0, 0]).is_err());
        assert_eq!(Permutation::new(vec![1, 2, 0]).unwrap().parity(), 1);
    }

    #[test]
    fn two_level_pair_fermion_is_singlet_like() {
        for n_max in 0..=2 {
            let basis = Arc::new(enumerate_full(2, 2, n_max).unwrap());
            let sub = project_reference(&basis, Statistics::Fermion).unwrap();
            assert_eq!(sub.dim(), n_max + 1);
            let s = std::f64::consts::FRAC_1_SQRT_2;
            for (c, col) in sub.columns().iter().enumerate() {
                let ge = basis.index_of(&BasisState::new(c, vec![0, 1])).unwrap();
                let eg = basis.index_of(&BasisState::new(c, vec![1, 0])).unwrap();
                assert_eq!(col.len(), 2);
                let amp: HashMap<usize, f64> = col.iter().copied().collect();
                assert!((amp[&ge] - s).abs() < 1e-12 || (amp[&ge] + s).abs() < 1e-12);
                assert!((amp[&ge] + amp[&eg]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn first_excited_two_level_three_molecules() {
        let basis = Arc::new(enumerate_first_excited(2, 1, 3).unwrap());
        assert_eq!(project_reference(&basis, Statistics::Boson).unwrap().dim(), 2);
        assert_eq!(project_reference(&basis, Statistics::Fermion).unwrap().dim(), 0);
        assert_eq!(project_reference(&basis, Statistics::NoPauli).unwrap().dim(), 4);
    }

    #[test]
    fn water_model_full_space_dims() {
        let basis = Arc::new(enumerate_full(10, 3, 1).unwrap());
        assert_eq!(project_orbit(&basis, Statistics::Boson).unwrap().dim(), 440);
        assert_eq!(project_orbit(&basis, Statistics::Fermion).unwrap().dim(), 240);
        assert_eq!(binomial(12, 3) * 2, 440);
    }

    #[test]
    fn closed_form_counts() {
        assert_eq!(count_first_excited(10, 5, 4, Statistics::Boson).unwrap(), 245);
        assert_eq!(count_first_excited(10, 7, 3, Statistics::Fermion).unwrap(), 98);
        assert_eq!(count_first_excited(5, 4, 4, Statistics::Fermion).unwrap(), 5);
        assert!(count_first_excited(5, 5, 4, Statistics::Boson).is_err());
    }

    #[test]
    fn orbit_columns_have_single_photon_support() {
        let basis = Arc::new(enumerate_full(3, 3, 2).unwrap());
        for stats in [Statistics::Boson, Statistics::Fermion] {
            let sub = project_orbit(&basis, stats).unwrap();
            for c in 0..sub.dim() {
                assert!(sub.column_photons(c).is_some());
            }
        }
    }

    #[test]
    fn orbit_columns_are_ordered_by_photons_then_representative() {
        let basis = Arc::new(enumerate_full(3, 2, 1).unwrap());
        let sub = project_orbit(&basis, Statistics::Boson).unwrap();
        let keys: Vec<_> = (0..sub.dim())
            .map(|c| {
                let mut rep = basis.state(sub.column(c)[0].0).occ.clone();
                rep.sort_unstable();
                (sub.column_photons(c).unwrap(), rep)
            })
            .collect();
        assert!(keys.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn non_closed_basis_is_rejected() {
        let states = vec![BasisState::new(0, vec![0, 1])];
        let basis = Arc::new(BasisSet::from_states(states, 2, crate::model::Manifold::Full).unwrap());
        assert!(matches!(
            project_orbit(&basis, Statistics::Boson),
            Err(Error::NotPermutationClosed)
        ));
        assert!(matches!(
            project_reference(&basis, Statistics::Boson),
            Err(Error::NotPermutationClosed)
        ));
    }

    #[test]
    fn reference_compute_cap() {
        let basis = Arc::new(enumerate_full(5, 7, 0).unwrap());
        assert!(project_reference(&basis, Statistics::Boson).unwrap_err().is_cap());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 0), 1);
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(30, 15), 155_117_520);
    }
}
