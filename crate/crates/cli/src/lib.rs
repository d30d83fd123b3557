//! Command-line front end: builds profiles, verifies them, runs parameter
//! sweeps and emits plot data.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
pub mod commands;
pub mod document;
pub mod error;
pub mod output;
pub mod plot;
pub mod samples;
pub mod sweep;

use args::{Cli, Command};
use error::CliResult;

pub fn run(cli: &Cli) -> CliResult<()> {
    match &cli.command {
        Command::Flat(a) => commands::flat(a),
        Command::Bundle(a) => commands::bundle(a),
        Command::Projective(a) => commands::projective(a),
        Command::Verify(a) => commands::verify(a),
        Command::Sweep(a) => sweep::run(&a.spec, a.csv.as_deref(), a.tol),
        Command::PlotData(a) => {
            if a.list {
                let lines: Vec<_> = plot::DATASETS.iter().map(|d| format!("{:<24} {}", d.name, d.description)).collect();
                output::print_stdout(&lines.join("\n"))
            } else if a.all {
                plot::emit_all(a.dir.as_deref().expect("clap requires --dir"), a.samples)
            } else {
                let name = a.dataset.as_deref().expect("clap requires a dataset");
                plot::emit(plot::find(name)?, a.samples, a.csv.as_deref(), a.svg.as_deref())
            }
        }
    }
}
