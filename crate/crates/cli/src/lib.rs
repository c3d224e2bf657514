//! The `qcalab` command line: one study per invocation, CSV or plain-text
//! output, exit status 0 (pass), 1 (a checked property failed) or 2 (usage).

pub mod args;
mod commands;
mod config;
mod error;
mod report;
mod selftest;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use args::Cli;
use args::{Command, Precision};
pub use config::{merge_config, parse_config};
pub use error::{CliError, Outcome};
pub use report::Report;

/// Caps rayon's worker count from `QCALAB_THREADS` (0 or unset: automatic).
fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("QCALAB_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("QCALAB_THREADS must be a non-negative integer, got `{value}`")))?;
    // a global pool may already exist when embedded in tests; that is fine
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

macro_rules! dispatch {
    ($precision:expr, $module:ident :: $f:ident, $args:expr) => {
        match $precision {
            Precision::F64 => commands::$module::$f::<f64>($args),
            Precision::F32 => commands::$module::$f::<f32>($args),
        }
    };
}

/// Runs a parsed command and returns what it wants written.
pub fn execute(command: &Command) -> Result<Report, CliError> {
    if command.common().selftest {
        return selftest::run(command);
    }
    let p = command.common().precision;
    match command {
        Command::Walk(a) => dispatch!(p, walk::run, a),
        Command::Converge(a) => dispatch!(p, converge::run, a),
        Command::Trotter(a) => dispatch!(p, trotter::run, a),
        Command::Localize(a) => dispatch!(p, structure::localize, a),
        Command::Causality(a) => dispatch!(p, structure::causality, a),
        Command::Signal(a) => dispatch!(p, structure::signal, a),
        Command::Quiescence(a) => dispatch!(p, quiescence::run, a),
    }
}

fn write_report(command: &Command, report: &Report) -> Result<(), CliError> {
    match &command.common().output {
        Some(path) => std::fs::write(path, &report.body)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(report.body.as_bytes())?;
            out.flush()?;
        }
    }
    for (path, text) in &report.files {
        std::fs::write(path, text)?;
    }
    for line in &report.notes {
        eprintln!("{line}");
    }
    Ok(())
}

/// Full command-line entry point; returns the process exit status.
pub fn run<I: IntoIterator<Item = OsString>>(argv: I) -> i32 {
    let args: Result<Vec<String>, _> = argv.into_iter().map(|a| a.into_string()).collect();
    let Ok(args) = args else {
        eprintln!("error: arguments must be valid UTF-8");
        return 2;
    };
    let result = merge_config(args).and_then(|args| {
        let cli = match Cli::try_parse_from(args) {
            Ok(cli) => cli,
            Err(e) => {
                let code = if e.use_stderr() { 2 } else { 0 };
                let _ = e.print();
                return Ok(code);
            }
        };
        configure_threads()?;
        let report = execute(&cli.command)?;
        write_report(&cli.command, &report)?;
        Ok(report.outcome.exit_code())
    });
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
