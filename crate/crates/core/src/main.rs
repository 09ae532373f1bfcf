use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use hsp_core::cli::{execute, exit_code, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match execute(&cli) {
        Ok(output) => output,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(exit_code(&err) as u8);
        }
    };
    let written = match &cli.global.out {
        Some(path) => std::fs::write(path, &output.text),
        None => std::io::stdout().write_all(output.text.as_bytes()),
    };
    if let Err(err) = written {
        eprintln!("error: {err}");
        return ExitCode::from(1);
    }
    match output.error {
        Some(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err) as u8)
        }
        None => ExitCode::SUCCESS,
    }
}
