//! `qpoly verify` runs the identity suites; `qpoly table` emits exact tables.
//!
//! Exit status: 0 when every check passes (documented discrepancies
//! included), 1 when a check fails, 2 on a usage error, 3 on an I/O error.

mod args;
mod render;
mod tables;

use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use qpoly_core::verify;

use args::{Cli, Command};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("qpoly: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("qpoly: {msg}");
            ExitCode::from(EXIT_IO)
        }
    }
}

enum Failure {
    Usage(String),
    Io(String),
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Verify(a) => {
            let config = a.config().map_err(Failure::Usage)?;
            let report = verify::run(&config);
            let text = render::report(&report, a.context.format).map_err(Failure::Io)?;
            emit(&text, a.context.out.as_deref())?;
            Ok(if report.passed() { 0 } else { EXIT_FAIL })
        }
        Command::Table(a) => {
            let ctx = a.context.context().map_err(Failure::Usage)?;
            let table = tables::build(&a, &ctx).map_err(Failure::Usage)?;
            let text = render::table(&table, a.context.format).map_err(Failure::Io)?;
            emit(&text, a.context.out.as_deref())?;
            Ok(0)
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    let result = match out {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(|e| format!("cannot write output: {e}")),
    };
    result.map_err(Failure::Io)
}
