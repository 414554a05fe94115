mod args;
mod commands;
mod error;
mod output;

use std::process::ExitCode;

use clap::Parser;

use crate::args::{Cli, Command};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Count(a) => commands::cmd_count(a),
        Command::Table1(a) => commands::cmd_table1(a),
        Command::Spectrum(a) => commands::cmd_spectrum(a),
        Command::Thermo(a) => commands::cmd_thermo(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("permpol: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
