mod args;
mod report;
mod verbs;

use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use hochlab::Error;

/// Exit status for a report whose checked property failed.
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INVALID_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Budget { .. } => EXIT_BUDGET,
        Error::Internal(_) => EXIT_CHECK_FAILED,
        _ => EXIT_INVALID_INPUT,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match verbs::run(&cli) {
        Ok(rendered) => {
            print!("{}", rendered.text);
            ExitCode::from(rendered.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
