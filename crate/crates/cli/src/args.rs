use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permpol::{Manifold, Statistics};

#[derive(Debug, Parser)]
#[command(name = "permpol", version, about = "Pauli-allowed state spaces of identical molecules in a cavity")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Allowed and bright state counts for one configuration.
    Count(CountArgs),
    /// The full first-excitation-manifold count table as CSV.
    Table1(Table1Args),
    /// Sector-resolved energy levels with photon content.
    Spectrum(SpectrumArgs),
    /// Direct-summation thermodynamic functions per sector.
    Thermo(ThermoArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StatsArg {
    None,
    Boson,
    Fermion,
    All,
}

/// Expands `--stats` values into an ordered, duplicate-free sector list.
pub fn sectors(values: &[StatsArg]) -> Vec<Statistics> {
    let wanted = |s: Statistics| {
        values.iter().any(|v| {
            matches!(
                (v, s),
                (StatsArg::All, _)
                    | (StatsArg::None, Statistics::NoPauli)
                    | (StatsArg::Boson, Statistics::Boson)
                    | (StatsArg::Fermion, Statistics::Fermion)
            )
        })
    };
    Statistics::ALL.into_iter().filter(|&s| wanted(s)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ManifoldArg {
    FirstExcited,
    Full,
}

impl From<ManifoldArg> for Manifold {
    fn from(m: ManifoldArg) -> Self {
        match m {
            ManifoldArg::FirstExcited => Manifold::FirstExcited,
            ManifoldArg::Full => Manifold::Full,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Molecule model file (JSON).
    #[arg(long, conflicts_with_all = ["levels", "ground"])]
    pub model: Option<PathBuf>,
    /// Synthetic model: number of levels per molecule.
    #[arg(long, requires = "ground")]
    pub levels: Option<usize>,
    /// Synthetic model: levels in the ground-state manifold.
    #[arg(long, requires = "levels")]
    pub ground: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct StatsArgs {
    /// Sectors to report.
    #[arg(long, value_enum, value_delimiter = ',', default_value = "all")]
    pub stats: Vec<StatsArg>,
}

#[derive(Debug, Clone, Args)]
pub struct CountArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long)]
    pub molecules: usize,
    #[arg(long, value_enum, default_value = "first-excited")]
    pub manifold: ManifoldArg,
    /// Photon cutoff, used with `--manifold full`.
    #[arg(long, default_value_t = 1)]
    pub nmax: usize,
    #[command(flatten)]
    pub stats: StatsArgs,
    /// Also write a full-precision CSV here.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Table1Args {
    #[command(flatten)]
    pub stats: StatsArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Compare against the shipped fixture; exit 4 on mismatch.
    #[arg(long)]
    pub check: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    #[command(flatten)]
    pub model: ModelArgs,
    #[arg(long, default_value_t = 3)]
    pub molecules: usize,
    #[arg(long, value_enum, default_value = "full")]
    pub manifold: ManifoldArg,
    #[command(flatten)]
    pub stats: StatsArgs,
    /// Cavity photon energy, cm⁻¹.
    #[arg(long = "cavity-wn", default_value_t = 1681.0)]
    pub cavity_wn: f64,
    /// Coupling strength per atomic unit of dipole, cm⁻¹.
    #[arg(long, default_value_t = 490.0)]
    pub coupling: f64,
    #[arg(long, default_value_t = 1)]
    pub nmax: usize,
    /// Keep only excitation-conserving coupling terms.
    #[arg(long)]
    pub rwa: bool,
    /// Include diagonal dipole elements in the coupling.
    #[arg(long)]
    pub permanent_dipoles: bool,
}

#[derive(Debug, Clone, Args)]
pub struct SpectrumArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    /// Report absolute energies instead of energies above the unprojected ground state.
    #[arg(long)]
    pub absolute: bool,
    #[arg(long, default_value_t = 0.1)]
    pub dark_below: f64,
    #[arg(long, default_value_t = 0.9)]
    pub photonic_above: f64,
    /// Output directory; one CSV per sector. Stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ThermoArgs {
    #[command(flatten)]
    pub system: SystemArgs,
    #[arg(long, default_value_t = 1.0)]
    pub tmin: f64,
    #[arg(long, default_value_t = 1000.0)]
    pub tmax: f64,
    #[arg(long, default_value_t = 1.0)]
    pub tstep: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
