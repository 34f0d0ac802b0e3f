mod args;
mod commands;
mod report;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use report::{CliError, EXIT_USAGE};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    let indent = cli.json_indent;
    match commands::run(cli) {
        Ok(report) => {
            println!("{}", report.render(indent));
            ExitCode::from(report.exit_code())
        }
        Err(e) => {
            eprintln!("hopf-cell: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => EXIT_USAGE,
                CliError::Failed(_) => 1,
            })
        }
    }
}
