//! State and bright-state counts per symmetry sector.

use std::sync::Arc;

use crate::error::Result;
use crate::model::{Manifold, Statistics};
use crate::observables::brightness;
use crate::statespace::{enumerate_first_excited, enumerate_full};
use crate::symmetry::project_orbit;

/// (m, m_g, n) for every row of the first-excitation-manifold count table:
/// two-, five- and ten-level molecules with two to four copies.
pub const TABLE1_ROWS: [(usize, usize, usize); 27] = [
    (2, 1, 2),
    (2, 1, 3),
    (2, 1, 4),
    (5, 1, 2),
    (5, 1, 3),
    (5, 1, 4),
    (5, 2, 2),
    (5, 2, 3),
    (5, 2, 4),
    (5, 3, 2),
    (5, 3, 3),
    (5, 3, 4),
    (5, 4, 2),
    (5, 4, 3),
    (5, 4, 4),
    (10, 1, 2),
    (10, 1, 3),
    (10, 1, 4),
    (10, 3, 2),
    (10, 3, 3),
    (10, 3, 4),
    (10, 5, 2),
    (10, 5, 3),
    (10, 5, 4),
    (10, 7, 2),
    (10, 7, 3),
    (10, 7, 4),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SectorCensus {
    pub statistics: Statistics,
    pub states: u64,
    /// Tr(a†a) over the sector.
    pub bright: u64,
}

/// Counts for one (m, m_g, n) configuration, in the order of `sectors`.
///
/// The basis is enumerated and projected with the orbit construction; the
/// bright count is the photon-number trace. `n_max` only matters for
/// [`Manifold::Full`].
pub fn census(
    m: usize,
    m_g: usize,
    n: usize,
    manifold: Manifold,
    n_max: usize,
    sectors: &[Statistics],
) -> Result<Vec<SectorCensus>> {
    let basis = Arc::new(match manifold {
        Manifold::FirstExcited => enumerate_first_excited(m, m_g, n)?,
        Manifold::Full => enumerate_full(m, n, n_max)?,
    });
    sectors
        .iter()
        .map(|&statistics| {
            let report = brightness(&project_orbit(&basis, statistics)?);
            Ok(SectorCensus {
                statistics,
                states: report.dim as u64,
                bright: report.bright_count(),
            })
        })
        .collect()
}

/// 100·part/whole rounded half up, with 0 for an empty whole.
pub fn percent_rounded(part: u64, whole: u64) -> u64 {
    if whole == 0 {
        return 0;
    }
    (200 * part as u128 + whole as u128).div_euclid(2 * whole as u128) as u64
}

pub fn percent(part: u64, whole: u64) -> f64 {
    if whole == 0 {
        0.0
    } else {
        100.0 * part as f64 / whole as f64
    }
}
