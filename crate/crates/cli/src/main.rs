use std::process::ExitCode;

use clap::Parser;
use tcl_cli::{execute, Cli, RunConfig};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match RunConfig::try_from(cli).and_then(|cfg| execute(&cfg)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
