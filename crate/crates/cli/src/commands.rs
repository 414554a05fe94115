use std::fmt::Write as _;
use std::fs;

use permpol::census::{census, percent, percent_rounded, SectorCensus, TABLE1_ROWS};
use permpol::observables::ClassThresholds;
use permpol::pipeline::{sector_energies, sector_spectra};
use permpol::thermo::{compare_spectra, temperature_grid, SectorThermo};
use permpol::{
    load_model, CavityMode, CouplingScheme, EnsembleSpec, Manifold, MoleculeModel, Statistics,
};

use crate::args::{sectors, CountArgs, ModelArgs, SpectrumArgs, SystemArgs, Table1Args, ThermoArgs};
use crate::error::CliError;
use crate::output::{emit, num, write_atomic};

pub const TABLE1_FIXTURE: &str = include_str!("../fixtures/table1.csv");

/// Resolves a model file or synthetic parameters. `gap` places the
/// synthetic excited manifold.
fn resolve_model(args: &ModelArgs, gap: f64) -> Result<MoleculeModel, CliError> {
    match (&args.model, args.levels, args.ground) {
        (Some(path), _, _) => Ok(load_model(path)?),
        (None, Some(m), Some(m_g)) => Ok(MoleculeModel::synthetic(m, m_g, gap)?),
        _ => Err(CliError::Usage("give either --model <path> or --levels and --ground".into())),
    }
}

fn counts_for(model: &MoleculeModel, args: &CountArgs) -> Result<Vec<SectorCensus>, CliError> {
    Ok(census(
        model.level_count(),
        model.m_g,
        args.molecules,
        args.manifold.into(),
        args.nmax,
        &Statistics::ALL,
    )?)
}

fn pct_cell(part: u64, whole: u64) -> String {
    format!("{part} ({}%)", percent_rounded(part, whole))
}

/// Table-style row: state counts then bright counts, sector order
/// none/boson/fermion, restricted to `selected`.
fn format_count_row(rows: &[SectorCensus], selected: &[Statistics]) -> (String, String) {
    let none = rows[0].states;
    let mut head = Vec::new();
    let mut cells = Vec::new();
    for r in rows.iter().filter(|r| selected.contains(&r.statistics)) {
        head.push(format!("states {}", r.statistics));
        cells.push(match r.statistics {
            Statistics::NoPauli => r.states.to_string(),
            _ => pct_cell(r.states, none),
        });
    }
    for r in rows.iter().filter(|r| selected.contains(&r.statistics)) {
        head.push(format!("bright {}", r.statistics));
        cells.push(match r.statistics {
            Statistics::NoPauli => r.bright.to_string(),
            _ => pct_cell(r.bright, r.states),
        });
    }
    (head.join(" | "), cells.join(" | "))
}

pub fn cmd_count(args: &CountArgs) -> Result<(), CliError> {
    let model = resolve_model(&args.model, 1000.0)?;
    if args.molecules < 1 {
        return Err(CliError::Usage("--molecules must be >= 1".into()));
    }
    let selected = sectors(&args.stats.stats);
    let rows = counts_for(&model, args)?;
    let (head, row) = format_count_row(&rows, &selected);
    println!(
        "m = {}, m_g = {}, n = {}, manifold = {}",
        model.level_count(),
        model.m_g,
        args.molecules,
        Manifold::from(args.manifold)
    );
    println!("{head}");
    println!("{row}");

    if let Some(path) = &args.out {
        let none = rows[0].states;
        let mut csv = String::from("m,m_g,n,manifold,sector,states,states_pct,bright,bright_pct\n");
        for r in rows.iter().filter(|r| selected.contains(&r.statistics)) {
            writeln!(
                csv,
                "{},{},{},{},{},{},{},{},{}",
                model.level_count(),
                model.m_g,
                args.molecules,
                Manifold::from(args.manifold),
                r.statistics,
                r.states,
                num(percent(r.states, none)),
                r.bright,
                num(percent(r.bright, r.states)),
            )
            .unwrap();
        }
        write_atomic(path, &csv)?;
    }
    Ok(())
}

fn sector_columns(stats: Statistics) -> Vec<String> {
    let s = stats.as_str();
    match stats {
        Statistics::NoPauli => vec![format!("states_{s}"), format!("bright_{s}")],
        _ => vec![
            format!("states_{s}"),
            format!("states_{s}_pct"),
            format!("bright_{s}"),
            format!("bright_{s}_pct"),
        ],
    }
}

/// Header order: keys, state columns, bright columns.
fn table1_header(selected: &[Statistics]) -> Vec<String> {
    let mut cols: Vec<String> = ["m", "m_g", "n"].iter().map(|s| s.to_string()).collect();
    let per: Vec<Vec<String>> = selected.iter().map(|&s| sector_columns(s)).collect();
    for group in &per {
        cols.extend(group.iter().filter(|c| c.starts_with("states_")).cloned());
    }
    for group in &per {
        cols.extend(group.iter().filter(|c| c.starts_with("bright_")).cloned());
    }
    cols
}

pub fn render_table1(selected: &[Statistics]) -> Result<String, CliError> {
    let header = table1_header(selected);
    let mut out = header.join(",");
    out.push('\n');
    for &(m, m_g, n) in &TABLE1_ROWS {
        let rows = census(m, m_g, n, Manifold::FirstExcited, 1, &Statistics::ALL)?;
        let none = rows[0].states;
        let value = |col: &str| -> String {
            match col {
                "m" => m.to_string(),
                "m_g" => m_g.to_string(),
                "n" => n.to_string(),
                _ => {
                    let r = rows
                        .iter()
                        .find(|r| col.contains(&format!("_{}", r.statistics.as_str())))
                        .expect("column names a sector");
                    match (col.starts_with("states_"), col.ends_with("_pct")) {
                        (true, false) => r.states.to_string(),
                        (true, true) => percent_rounded(r.states, none).to_string(),
                        (false, false) => r.bright.to_string(),
                        (false, true) => percent_rounded(r.bright, r.states).to_string(),
                    }
                }
            }
        };
        let line: Vec<String> = header.iter().map(|c| value(c)).collect();
        out.push_str(&line.join(","));
        out.push('\n');
    }
    Ok(out)
}

/// The fixture restricted to the columns in `header`, in that order.
fn project_fixture(header: &[String]) -> Result<String, CliError> {
    let mut lines = TABLE1_FIXTURE.lines();
    let fixture_header: Vec<&str> = lines
        .next()
        .ok_or_else(|| CliError::Check("fixture is empty".into()))?
        .split(',')
        .collect();
    let idx: Vec<usize> = header
        .iter()
        .map(|c| {
            fixture_header
                .iter()
                .position(|f| f == c)
                .ok_or_else(|| CliError::Check(format!("fixture lacks column {c}")))
        })
        .collect::<Result<_, _>>()?;
    let mut out = header.join(",");
    out.push('\n');
    for line in lines {
        let cells: Vec<&str> = line.split(',').collect();
        let picked: Vec<&str> = idx.iter().map(|&i| cells[i]).collect();
        out.push_str(&picked.join(","));
        out.push('\n');
    }
    Ok(out)
}

pub fn cmd_table1(args: &Table1Args) -> Result<(), CliError> {
    let selected = sectors(&args.stats.stats);
    let csv = render_table1(&selected)?;
    emit(args.out.as_deref(), &csv)?;
    if args.check {
        let expected = project_fixture(&table1_header(&selected))?;
        if expected != csv {
            let diff = csv
                .lines()
                .zip(expected.lines())
                .enumerate()
                .find(|(_, (a, b))| a != b)
                .map(|(i, (a, b))| format!("line {}: got '{a}', expected '{b}'", i + 1))
                .unwrap_or_else(|| "row count differs".into());
            return Err(CliError::Check(diff));
        }
        eprintln!("table1: all {} rows match the fixture", TABLE1_ROWS.len());
    }
    Ok(())
}

fn ensemble(system: &SystemArgs) -> Result<EnsembleSpec, CliError> {
    let model = resolve_model(&system.model, system.cavity_wn)?;
    let cavity = CavityMode::new(system.cavity_wn, system.nmax, system.coupling)?;
    let spec = EnsembleSpec::new(model, system.molecules, cavity, Statistics::NoPauli, system.manifold.into())?;
    Ok(spec.with_coupling(CouplingScheme {
        rwa: system.rwa,
        permanent_dipoles: system.permanent_dipoles,
    }))
}

/// Requested sectors with the unprojected baseline always computed first.
fn with_baseline(selected: &[Statistics]) -> Vec<Statistics> {
    let mut all = vec![Statistics::NoPauli];
    all.extend(selected.iter().copied().filter(|&s| s != Statistics::NoPauli));
    all
}

pub fn cmd_spectrum(args: &SpectrumArgs) -> Result<(), CliError> {
    let spec = ensemble(&args.system)?;
    let selected = sectors(&args.system.stats.stats);
    let thresholds = ClassThresholds {
        dark_below: args.dark_below,
        photonic_above: args.photonic_above,
    };
    let runs = sector_spectra(&spec, &with_baseline(&selected))?;
    let origin = if args.absolute {
        0.0
    } else {
        runs[0].spectrum.ground_energy().unwrap_or(0.0)
    };

    if let Some(dir) = &args.out {
        fs::create_dir_all(dir)?;
    }
    let mut stdout_csv = String::from("sector,energy_cm1,photon_expectation,brightness_class\n");
    for run in runs.iter().filter(|r| selected.contains(&r.statistics())) {
        let s = &run.spectrum;
        eprintln!(
            "sector {}: {} states{}",
            run.statistics(),
            s.len(),
            s.ground_energy()
                .map(|e| format!(", lowest level {} cm-1", num(e - origin)))
                .unwrap_or_default()
        );
        let classes = s.classes(&thresholds);
        let mut csv = String::from("energy_cm1,photon_expectation,brightness_class\n");
        for ((e, x), c) in s.energies.iter().zip(&s.photon_expectations).zip(&classes) {
            let row = format!("{},{},{}", num(e - origin), num(*x), c);
            writeln!(csv, "{row}").unwrap();
            writeln!(stdout_csv, "{},{row}", run.statistics()).unwrap();
        }
        if let Some(dir) = &args.out {
            write_atomic(&dir.join(format!("spectrum_{}.csv", run.statistics())), &csv)?;
        }
    }
    if args.out.is_none() {
        emit(None, &stdout_csv)?;
    }
    Ok(())
}

pub fn render_thermo(tables: &[SectorThermo], selected: &[Statistics]) -> String {
    let shown: Vec<&SectorThermo> = tables.iter().filter(|t| selected.contains(&t.statistics)).collect();
    let deltas: Vec<&SectorThermo> = shown
        .iter()
        .copied()
        .filter(|t| t.statistics != Statistics::NoPauli)
        .collect();
    let mut header = vec!["T_K".to_string()];
    for t in &shown {
        let s = t.statistics;
        header.extend([
            format!("Q_{s}"),
            format!("U_{s}_kJmol"),
            format!("C_{s}_JmolK"),
            format!("S_{s}_JmolK"),
            format!("G_{s}_kJmol"),
        ]);
    }
    for t in &deltas {
        let s = t.statistics;
        header.extend([
            format!("dQ_{s}"),
            format!("dU_{s}_kJmol"),
            format!("dC_{s}_JmolK"),
            format!("dS_{s}_JmolK"),
            format!("dG_{s}_kJmol"),
        ]);
    }
    let mut out = header.join(",");
    out.push('\n');
    let grid = tables
        .first()
        .map(|t| t.table.temperatures.clone())
        .unwrap_or_default();
    for (i, &temp) in grid.iter().enumerate() {
        let mut cells = vec![num(temp)];
        for t in &shown {
            let r = t.table.row(i);
            cells.extend([num(r.q), num(r.u), num(r.c), num(r.s), num(r.g)]);
        }
        for t in &deltas {
            let r = t.delta.row(i);
            cells.extend([num(r.q), num(r.u), num(r.c), num(r.s), num(r.g)]);
        }
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn cmd_thermo(args: &ThermoArgs) -> Result<(), CliError> {
    let spec = ensemble(&args.system)?;
    let selected = sectors(&args.system.stats.stats);
    let grid = temperature_grid(args.tmin, args.tmax, args.tstep)?;
    let spectra = sector_energies(&spec, &with_baseline(&selected))?;
    for (s, e) in &spectra {
        if e.is_empty() {
            return Err(CliError::Usage(format!("sector {s} is empty; nothing to sum over")));
        }
    }
    let tables = compare_spectra(&spectra, &grid)?;
    for t in tables.iter().filter(|t| t.statistics != Statistics::NoPauli) {
        eprintln!(
            "sector {}: zero-point shift vs none {} cm-1",
            t.statistics,
            num(t.zero_point_shift)
        );
    }
    emit(args.out.as_deref(), &render_thermo(&tables, &selected))?;
    Ok(())
}
