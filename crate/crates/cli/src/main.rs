mod args;
mod commands;
mod generate;
mod load;
mod output;
mod reproduce;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use output::CliError;

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("TTGEO_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("TTGEO_THREADS must be a positive integer, got `{v}`")))?;
    if n == 0 {
        return Err(CliError::Usage("TTGEO_THREADS must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot configure thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    let result = configure_threads().and_then(|_| commands::run(cli.command));
    match result {
        Ok(outcome) => {
            print!("{}", output::render(&outcome.report, format));
            match outcome.failure {
                None => ExitCode::SUCCESS,
                Some(msg) => {
                    eprintln!("check failed: {msg}");
                    ExitCode::from(3)
                }
            }
        }
        Err(err) => {
            if let CliError::Mismatch { report, .. } = &err {
                print!("{}", output::render(report, format));
            }
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
