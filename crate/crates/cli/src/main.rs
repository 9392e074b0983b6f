//! `burnside-lab`: exact kernels, spectra, distance curves, samples,
//! statistics and verification suites, written as files with a manifest.
//!
//! Exit status: 0 on success, 1 when a verification fails, 2 on a usage
//! error, 3 when a size cap is exceeded, 4 when an output cannot be written.

mod args;
mod commands;
mod error;
mod output;

use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::Cli;
use crate::error::CliError;
use crate::output::{manifest_path, to_json, write_output, RunManifest};

fn execute(cli: &Cli, argv: &[String]) -> Result<(), CliError> {
    let start = Instant::now();
    let outcome = commands::run(&cli.command)?;
    let out = cli.command.output();
    write_output(out.out.as_deref(), &outcome.content)?;
    let mut outputs = Vec::new();
    if let Some(path) = &out.out {
        outputs.push(path.clone());
        if let (Some(script), Some(plot)) = (&out.gnuplot, &outcome.plot) {
            write_output(Some(script), &plot(&path.to_string_lossy()))?;
            outputs.push(script.clone());
        }
        let manifest = RunManifest {
            schema: output::schema("manifest"),
            command: cli.command.name(),
            argv: argv.to_vec(),
            params: &cli.command,
            seed: cli.command.seed(),
            tool_version: env!("CARGO_PKG_VERSION"),
            outputs,
            duration_secs: start.elapsed().as_secs_f64(),
        };
        write_output(Some(&manifest_path(path)), &to_json(&manifest))?;
    }
    eprintln!("{}", outcome.summary);
    match outcome.failure {
        Some(f) => Err(CliError::Failed(f)),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(2),
            };
        }
    };
    match execute(&cli, &argv[1..]) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
