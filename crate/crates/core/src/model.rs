//! Molecular and cavity input data.
//!
//! A [`MoleculeModel`] is the single-molecule eigenstate picture: `m` level
//! energies in cm⁻¹, the `m × m` transition-dipole matrix in atomic units and
//! the number `m_g` of lowest levels that form the ground-state manifold.
//! Model files are JSON:
//!
//! ```json
//! {"name": "two-level", "m_g": 1,
//!  "levels": [{"energy_cm1": 0.0, "label": "g"}, {"energy_cm1": 1681.0, "label": "e"}],
//!  "dipole_au": [[0.0, 1.0], [1.0, 0.0]]}
//! ```

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const DEMO_MODEL: &str = include_str!("../data/demo_h2o_10level.json");

const SYMMETRY_RTOL: f64 = 1e-12;

/// One invariant violation, tagged with the offending field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub field: &'static str,
    pub message: String,
}

impl Violation {
    fn new(field: &'static str, message: impl Into<String>) -> Self {
        Violation {
            field,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeModel {
    pub name: String,
    pub energies: Vec<f64>,
    pub labels: Vec<String>,
    pub dipole: DMatrix<f64>,
    pub m_g: usize,
}

impl MoleculeModel {
    /// Builds a model and rejects it unless every invariant holds.
    pub fn new(
        name: impl Into<String>,
        energies: Vec<f64>,
        dipole: DMatrix<f64>,
        m_g: usize,
    ) -> Result<Self> {
        let labels = (0..energies.len()).map(|i| format!("L{i}")).collect();
        Self::with_labels(name, energies, labels, dipole, m_g)
    }

    pub fn with_labels(
        name: impl Into<String>,
        energies: Vec<f64>,
        labels: Vec<String>,
        dipole: DMatrix<f64>,
        m_g: usize,
    ) -> Result<Self> {
        let model = MoleculeModel {
            name: name.into(),
            energies,
            labels,
            dipole,
            m_g,
        };
        let violations = model.validate();
        if violations.is_empty() {
            Ok(model)
        } else {
            Err(Error::Validation(violations))
        }
    }

    /// Evenly spaced placeholder model: ground levels at 0, 1, ... cm⁻¹ and
    /// excited levels above `gap`, with unit dipoles between every ground and
    /// every excited level. Counting and brightness do not depend on these
    /// values.
    pub fn synthetic(m: usize, m_g: usize, gap: f64) -> Result<Self> {
        let energies = (0..m)
            .map(|k| {
                if k < m_g {
                    k as f64
                } else {
                    gap + (k - m_g) as f64
                }
            })
            .collect();
        let dipole = DMatrix::from_fn(m, m, |i, j| {
            if (i < m_g) != (j < m_g) {
                1.0
            } else {
                0.0
            }
        });
        Self::new(format!("synthetic {m}-level (m_g = {m_g})"), energies, dipole, m_g)
    }

    /// The shipped 10-level demonstration model (`m_g = 5`). Its level
    /// energies and dipoles are placeholders shaped like a bending
    /// fundamental with rotational fine structure, not spectroscopic data.
    pub fn demo() -> Self {
        parse_model(DEMO_MODEL, Path::new("<demo>")).expect("shipped demo model is valid")
    }

    pub fn level_count(&self) -> usize {
        self.energies.len()
    }

    pub fn is_ground(&self, level: usize) -> bool {
        level < self.m_g
    }

    /// Returns every invariant violation; empty iff the model is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let m = self.energies.len();
        if m < 2 {
            out.push(Violation::new("levels", "m must be >= 2"));
        }
        if self.m_g < 1 {
            out.push(Violation::new("m_g", "m_g must be >= 1"));
        }
        if self.m_g >= m {
            out.push(Violation::new("m_g", "m_g must be < m"));
        }
        if self.energies.iter().any(|e| !e.is_finite()) {
            out.push(Violation::new("energies", "energies must be finite"));
        } else if self.energies.windows(2).any(|w| w[1] < w[0]) {
            out.push(Violation::new("energies", "energies not nondecreasing"));
        }
        if self.labels.len() != m {
            out.push(Violation::new(
                "labels",
                format!("{} labels for {} levels", self.labels.len(), m),
            ));
        }
        let (rows, cols) = self.dipole.shape();
        if rows != m || cols != m {
            out.push(Violation::new(
                "dipole",
                format!("dipole is {rows}x{cols}, expected {m}x{m}"),
            ));
        } else if self.dipole.iter().any(|d| !d.is_finite()) {
            out.push(Violation::new("dipole", "dipole entries must be finite"));
        } else {
            let scale = self.dipole.amax();
            'outer: for i in 0..m {
                for j in (i + 1)..m {
                    let (a, b) = (self.dipole[(i, j)], self.dipole[(j, i)]);
                    if (a - b).abs() > SYMMETRY_RTOL * scale {
                        out.push(Violation::new(
                            "dipole",
                            format!("dipole not symmetric at ({i}, {j})"),
                        ));
                        break 'outer;
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LevelRecord {
    energy_cm1: f64,
    label: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    name: String,
    m_g: usize,
    levels: Vec<LevelRecord>,
    dipole_au: Vec<Vec<f64>>,
}

fn parse_model(text: &str, path: &Path) -> Result<MoleculeModel> {
    let raw: ModelFile = serde_json::from_str(text).map_err(|e| Error::Parse {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let m = raw.levels.len();
    if raw.dipole_au.len() != m || raw.dipole_au.iter().any(|row| row.len() != m) {
        return Err(Error::Validation(vec![Violation::new(
            "dipole_au",
            format!("dipole_au must be a {m}x{m} array"),
        )]));
    }
    let dipole = DMatrix::from_fn(m, m, |i, j| raw.dipole_au[i][j]);
    let (energies, labels) = raw
        .levels
        .into_iter()
        .map(|l| (l.energy_cm1, l.label))
        .unzip();
    MoleculeModel::with_labels(raw.name, energies, labels, dipole, raw.m_g)
}

pub fn load_model(path: impl AsRef<Path>) -> Result<MoleculeModel> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_model(&text, path)
}

pub fn model_to_json(model: &MoleculeModel) -> String {
    let m = model.level_count();
    let raw = ModelFile {
        name: model.name.clone(),
        m_g: model.m_g,
        levels: model
            .energies
            .iter()
            .zip(&model.labels)
            .map(|(&energy_cm1, label)| LevelRecord {
                energy_cm1,
                label: label.clone(),
            })
            .collect(),
        dipole_au: (0..m)
            .map(|i| (0..m).map(|j| model.dipole[(i, j)]).collect())
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&raw).expect("model serializes");
    s.push('\n');
    s
}

pub fn save_model(model: &MoleculeModel, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, model_to_json(model)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityMode {
    /// Photon energy in cm⁻¹.
    pub photon_energy: f64,
    /// Highest photon number kept in the Fock basis.
    pub n_max: usize,
    /// Coupling strength in cm⁻¹ per atomic unit of dipole.
    pub coupling_g: f64,
}

impl CavityMode {
    pub fn new(photon_energy: f64, n_max: usize, coupling_g: f64) -> Result<Self> {
        let mode = CavityMode {
            photon_energy,
            n_max,
            coupling_g,
        };
        let v = mode.validate();
        if v.is_empty() {
            Ok(mode)
        } else {
            Err(Error::Validation(v))
        }
    }

    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if !(self.photon_energy.is_finite() && self.photon_energy > 0.0) {
            out.push(Violation::new("photon_energy", "photon energy must be > 0"));
        }
        if self.n_max < 1 {
            out.push(Violation::new("n_max", "n_max must be >= 1"));
        }
        if !(self.coupling_g.is_finite() && self.coupling_g >= 0.0) {
            out.push(Violation::new("coupling_g", "coupling must be >= 0"));
        }
        out
    }
}

/// Permutation symmetry imposed on the molecular labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statistics {
    /// No projection: distinguishable molecules.
    NoPauli,
    /// Totally symmetric irrep [n¹].
    Boson,
    /// Totally antisymmetric irrep [1ⁿ].
    Fermion,
}

impl Statistics {
    pub const ALL: [Statistics; 3] = [Statistics::NoPauli, Statistics::Boson, Statistics::Fermion];

    /// Character of a permutation with the given parity (±1) in this irrep.
    pub fn character(self, parity: i8) -> f64 {
        match self {
            Statistics::Fermion => f64::from(parity),
            _ => 1.0,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Statistics::NoPauli => "none",
            Statistics::Boson => "boson",
            Statistics::Fermion => "fermion",
        }
    }
}

impl fmt::Display for Statistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Statistics {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "none" | "nopauli" | "no-pauli" => Ok(Statistics::NoPauli),
            "boson" | "bosons" => Ok(Statistics::Boson),
            "fermion" | "fermions" => Ok(Statistics::Fermion),
            other => Err(Error::InvalidArgument(format!("unknown statistics '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Manifold {
    Full,
    FirstExcited,
}

impl fmt::Display for Manifold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Manifold::Full => "full",
            Manifold::FirstExcited => "first-excited",
        })
    }
}

impl FromStr for Manifold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(Manifold::Full),
            "first-excited" | "first" => Ok(Manifold::FirstExcited),
            other => Err(Error::InvalidArgument(format!("unknown manifold '{other}'"))),
        }
    }
}

/// Which light-matter coupling terms enter the Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CouplingScheme {
    /// Keep only terms that conserve photons plus ground-to-excited
    /// manifold excitations.
    pub rwa: bool,
    /// Include diagonal (permanent) dipole elements.
    pub permanent_dipoles: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSpec {
    pub molecule: MoleculeModel,
    pub n: usize,
    pub cavity: CavityMode,
    pub statistics: Statistics,
    pub manifold: Manifold,
    pub coupling: CouplingScheme,
}

impl EnsembleSpec {
    pub fn new(
        molecule: MoleculeModel,
        n: usize,
        cavity: CavityMode,
        statistics: Statistics,
        manifold: Manifold,
    ) -> Result<Self> {
        let mut v = molecule.validate();
        v.extend(cavity.validate());
        if n < 1 {
            v.push(Violation::new("n", "n must be >= 1"));
        }
        if !v.is_empty() {
            return Err(Error::Validation(v));
        }
        Ok(EnsembleSpec {
            molecule,
            n,
            cavity,
            statistics,
            manifold,
            coupling: CouplingScheme::default(),
        })
    }

    pub fn with_coupling(mut self, coupling: CouplingScheme) -> Self {
        self.coupling = coupling;
        self
    }

    pub fn with_statistics(mut self, statistics: Statistics) -> Self {
        self.statistics = statistics;
        self
    }
}
