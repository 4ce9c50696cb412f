//! Command-line front end for the matrix-function approximation library.

mod args;
mod commands;
mod inputs;
mod report;

use clap::Parser;

use args::Cli;

/// Exit classes: 1 usage, 2 input, 3 numerical failure.
#[derive(Debug)]
pub struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    pub fn usage(msg: &str) -> Self {
        CliError { code: 1, message: msg.into() }
    }

    pub fn input(e: funmat::Error) -> Self {
        CliError { code: 2, message: e.to_string() }
    }

    pub fn input_msg(msg: &str) -> Self {
        CliError { code: 2, message: msg.into() }
    }

    pub fn numerical(e: funmat::Error) -> Self {
        // flag-value problems surface as usage, not numerics
        let code = match e {
            funmat::Error::TauOutOfRange { .. } | funmat::Error::IndexOutOfRange { .. } => 1,
            funmat::Error::Io(_) => 2,
            _ => 3,
        };
        CliError { code, message: e.to_string() }
    }

    pub fn numerical_msg(msg: &str) -> Self {
        CliError { code: 3, message: msg.into() }
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version print and exit cleanly; real parse errors are usage
            let code = if e.exit_code() == 0 { 0 } else { 1 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Some(threads) = cli.threads {
        if let Err(e) =
            rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global()
        {
            eprintln!("error: cannot configure thread pool: {e}");
            std::process::exit(1);
        }
    }
    match commands::dispatch(&cli.command) {
        Ok(report) => {
            if let Err(e) = report.emit(cli.format, cli.out.as_deref()) {
                eprintln!("error: {}", e.message);
                std::process::exit(e.code);
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.code);
        }
    }
}
