mod args;
mod commands;
mod error;
mod report;

use clap::Parser;
use std::process::ExitCode;

use args::{Cli, Command};
use error::Result;
use report::Report;

fn dispatch(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Fz(a) => commands::fz(a, cli.guard),
        Command::Fq(a) => commands::fq(a, cli.guard),
        Command::Oracle(a) => commands::oracle(a),
        Command::Motive(a) => commands::motive(a),
        Command::Globalize(a) => commands::globalize_cmd(a),
        Command::Verify(a) => commands::verify(a, cli.guard),
        Command::Tables(a) => commands::tables(a, cli.guard),
    }
}

fn run(cli: &Cli) -> Result<()> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return error::usage("--jobs must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(j)
            .build_global()
            .map_err(|e| error::CliError::Usage(e.to_string()))?;
    }
    let report = dispatch(cli)?;
    report.emit(cli.format, &mut std::io::stdout().lock())?;
    match commands::failed_checks(&report) {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
