//! Command-line front end: reads a problem file, runs the requested mode,
//! and prints the JSON report.

use clap::Parser;
use dulac::error::Error;
use dulac::problem::{parse_problem, Mode};
use dulac::report::{render, run};
use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

/// Exact normal forms for polynomial vector fields over Q(i).
#[derive(Parser)]
#[command(name = "dulac", version, about)]
struct Args {
    /// Problem file; reads standard input when omitted or "-".
    input: Option<PathBuf>,

    /// Override the truncation order from the problem file.
    #[arg(long)]
    order: Option<u32>,

    /// Override the resonance search bound from the problem file.
    #[arg(long = "res-bound")]
    res_bound: Option<u32>,

    /// Override the mode: normalize, isochore, resonance-only, or
    /// integrability.
    #[arg(long)]
    mode: Option<String>,

    /// Shorthand for --mode isochore.
    #[arg(long, conflicts_with = "mode")]
    isochore: bool,

    /// Write the report to this file instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::FAILURE
        }
    }
}

fn execute(args: &Args) -> Result<(), String> {
    let (source, text) = read_input(args.input.as_deref())?;
    let mut spec = parse_problem(&text).map_err(|e| describe(&source, e))?;
    if let Some(order) = args.order {
        if order < 2 {
            return Err(describe(&source, Error::InvalidOrder { required: 2, got: order }));
        }
        spec.order = order;
    }
    if let Some(bound) = args.res_bound {
        spec.res_bound = bound;
    }
    if let Some(mode) = &args.mode {
        spec.mode = Mode::from_str(mode)?;
    }
    if args.isochore {
        spec.mode = Mode::Isochore;
    }
    let report = render(&run(&spec).map_err(|e| describe(&source, e))?);
    match &args.output {
        Some(path) => fs::write(path, report)
            .map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            print!("{report}");
            Ok(())
        }
    }
}

fn read_input(input: Option<&std::path::Path>) -> Result<(String, String), String> {
    match input {
        Some(path) if path.as_os_str() != "-" => {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            Ok((path.display().to_string(), text))
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| format!("cannot read standard input: {e}"))?;
            Ok(("<stdin>".into(), text))
        }
    }
}

fn describe(source: &str, error: Error) -> String {
    match &error {
        Error::Parse { line, column, message } => {
            format!("{source}:{line}:{column}: {message}")
        }
        _ => format!("{source}: {error}"),
    }
}
