use std::process::ExitCode;

use clap::Parser;
use csck_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match csck_cli::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code())
        }
    }
}
