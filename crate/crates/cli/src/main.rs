mod args;
mod commands;
mod output;
mod reproduce;

use std::process::ExitCode;

use anyhow::Result;
use clap::Parser;

use args::{Cli, Command};
use commands::Context;
use output::{emit, exit_code, read_provenance, Provenance};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn execute(cli: Cli) -> Result<()> {
    let ctx = Context {
        workers: cli.workers.unwrap_or_else(cylmob::par::available_workers).max(1),
    };
    let mut command = match cli.command {
        Command::Rerun { file } => read_provenance(&file)?.config,
        other => other,
    };
    if let Some(seed) = command.seed_mut() {
        if seed.is_none() {
            *seed = Some(rand::random());
        }
    }
    let artifact = commands::run(&command, &ctx)?;
    emit(&artifact, &Provenance::new(&command), cli.out.as_deref())
}
