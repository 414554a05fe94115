//! Direct-product basis |N⟩|k₁⟩…|kₙ⟩ of one cavity mode and n molecules.
//!
//! States are kept as integer labels; a state's position in [`BasisSet`] is
//! its unit-vector index. Ordering is photon number first, then the level
//! tuple lexicographically, so the photon-number operator is block diagonal.

use std::collections::HashMap;

use crate::constants::DEFAULT_DIM_CAP;
use crate::error::{Error, Result};
use crate::model::Manifold;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisState {
    pub photons: usize,
    pub occ: Vec<u16>,
}

impl BasisState {
    pub fn new(photons: usize, occ: Vec<u16>) -> Self {
        BasisState { photons, occ }
    }

    pub fn molecules(&self) -> usize {
        self.occ.len()
    }
}

/// Swaps the levels of molecules `i` and `j`; the photon number is untouched.
pub fn apply_transposition(i: usize, j: usize, state: &BasisState) -> BasisState {
    let mut out = state.clone();
    out.occ.swap(i, j);
    out
}

#[derive(Debug, Clone)]
pub struct BasisSet {
    states: Vec<BasisState>,
    index: HashMap<BasisState, usize>,
    mode: Manifold,
    levels: usize,
    molecules: usize,
    n_max: usize,
}

impl BasisSet {
    /// Wraps an explicit state list. States must be distinct, share one
    /// molecule count, and use levels below `levels`.
    pub fn from_states(states: Vec<BasisState>, levels: usize, mode: Manifold) -> Result<Self> {
        let molecules = states.first().map_or(0, BasisState::molecules);
        let mut index = HashMap::with_capacity(states.len());
        let mut n_max = 0;
        for (i, s) in states.iter().enumerate() {
            if s.molecules() != molecules {
                return Err(Error::InvalidArgument(format!(
                    "state {i} has {} molecules, expected {molecules}",
                    s.molecules()
                )));
            }
            if s.occ.iter().any(|&k| usize::from(k) >= levels) {
                return Err(Error::InvalidArgument(format!("state {i} has a level index >= {levels}")));
            }
            n_max = n_max.max(s.photons);
            if index.insert(s.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate basis state at {i}")));
            }
        }
        Ok(BasisSet {
            states,
            index,
            mode,
            levels,
            molecules,
            n_max,
        })
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[BasisState] {
        &self.states
    }

    pub fn state(&self, i: usize) -> &BasisState {
        &self.states[i]
    }

    pub fn index_of(&self, state: &BasisState) -> Option<usize> {
        self.index.get(state).copied()
    }

    pub fn mode(&self) -> Manifold {
        self.mode
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn molecules(&self) -> usize {
        self.molecules
    }

    /// Largest photon number present.
    pub fn n_max(&self) -> usize {
        self.n_max
    }
}

fn check_dim(requested: u128, cap: usize) -> Result<usize> {
    if requested > cap as u128 {
        Err(Error::DimensionCap { requested, cap })
    } else {
        Ok(requested as usize)
    }
}

fn pow_u128(base: usize, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base as u128))
}

fn check_levels(m: usize) -> Result<()> {
    if m < 2 || m > usize::from(u16::MAX) {
        return Err(Error::InvalidArgument(format!("level count {m} out of range")));
    }
    Ok(())
}

/// Advances `occ` to the next tuple in lexicographic order over `0..m`.
/// Returns false after the last tuple.
fn next_tuple(occ: &mut [u16], m: u16) -> bool {
    for slot in occ.iter_mut().rev() {
        *slot += 1;
        if *slot < m {
            return true;
        }
        *slot = 0;
    }
    false
}

pub fn enumerate_full(m: usize, n: usize, n_max: usize) -> Result<BasisSet> {
    enumerate_full_capped(m, n, n_max, DEFAULT_DIM_CAP)
}

pub fn enumerate_full_capped(m: usize, n: usize, n_max: usize, cap: usize) -> Result<BasisSet> {
    check_levels(m)?;
    if n < 1 {
        return Err(Error::InvalidArgument("need at least one molecule".into()));
    }
    let dim = check_dim(pow_u128(m, n).saturating_mul(n_max as u128 + 1), cap)?;
    let mut states = Vec::with_capacity(dim);
    for photons in 0..=n_max {
        let mut occ = vec![0u16; n];
        loop {
            states.push(BasisState::new(photons, occ.clone()));
            if !next_tuple(&mut occ, m as u16) {
                break;
            }
        }
    }
    BasisSet::from_states(states, m, Manifold::Full)
}

/// Number of states in the first excitation manifold: every molecule in the
/// ground manifold with one photon, or exactly one molecule excited with none.
pub fn first_excited_dim(m: usize, m_g: usize, n: usize) -> u128 {
    let ground = pow_u128(m_g, n);
    let one_excited = (n as u128)
        .saturating_mul((m - m_g) as u128)
        .saturating_mul(pow_u128(m_g, n - 1));
    ground.saturating_add(one_excited)
}

pub fn enumerate_first_excited(m: usize, m_g: usize, n: usize) -> Result<BasisSet> {
    enumerate_first_excited_capped(m, m_g, n, DEFAULT_DIM_CAP)
}

pub fn enumerate_first_excited_capped(m: usize, m_g: usize, n: usize, cap: usize) -> Result<BasisSet> {
    check_levels(m)?;
    if n < 1 {
        return Err(Error::InvalidArgument("need at least one molecule".into()));
    }
    if m_g < 1 || m_g >= m {
        return Err(Error::InvalidArgument(format!("m_g = {m_g} must lie in 1..{m}")));
    }
    let dim = check_dim(first_excited_dim(m, m_g, n), cap)?;
    let mut states = Vec::with_capacity(dim);

    // Zero photons, one molecule excited.
    let mut ground = vec![0u16; n - 1];
    loop {
        for pos in 0..n {
            for level in m_g..m {
                let mut occ = Vec::with_capacity(n);
                occ.extend_from_slice(&ground[..pos]);
                occ.push(level as u16);
                occ.extend_from_slice(&ground[pos..]);
                states.push(BasisState::new(0, occ));
            }
        }
        if !next_tuple(&mut ground, m_g as u16) {
            break;
        }
    }
    states.sort_unstable();

    // One photon, all molecules in the ground manifold.
    let mut occ = vec![0u16; n];
    loop {
        states.push(BasisState::new(1, occ.clone()));
        if !next_tuple(&mut occ, m_g as u16) {
            break;
        }
    }
    debug_assert_eq!(states.len(), dim);
    BasisSet::from_states(states, m, Manifold::FirstExcited)
}
