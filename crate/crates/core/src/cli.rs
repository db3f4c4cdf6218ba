//! `basel-verify` command line.
//!
//! Exit codes: 0 all requested steps pass, 1 some step fails, 2 usage error,
//! 3 internal error (for instance the report could not be written).

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::builder::PossibleValuesParser;
use clap::{Parser, ValueEnum};

use crate::pipeline::{run_steps, STEP_IDS};
use crate::quadrature::QuadConfig;
use crate::report::{serialize_report, to_plain, ReportFormat};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Markdown,
    Plain,
}

impl From<OutputFormat> for ReportFormat {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Json => ReportFormat::Json,
            OutputFormat::Markdown => ReportFormat::Markdown,
            OutputFormat::Plain => ReportFormat::Plain,
        }
    }
}

fn positive_real(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(_) => Err(format!("'{s}' is not a positive finite number")),
        Err(e) => Err(format!("'{s}': {e}")),
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "basel-verify",
    version,
    about = "Numerically verify, step by step, that the sum of 1/n^2 is pi^2/6"
)]
struct Args {
    /// Run only this step (repeatable)
    #[arg(long = "step", value_name = "ID", value_parser = PossibleValuesParser::new(STEP_IDS))]
    steps: Vec<String>,

    /// Run every step in proof order (the default)
    #[arg(long, conflicts_with = "steps")]
    all: bool,

    /// Absolute tolerance
    #[arg(long, default_value = "1e-8", value_parser = positive_real)]
    tol: f64,

    /// Integrand evaluation budget per integration
    #[arg(long = "max-evals", default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_evals: u64,

    #[arg(long, value_enum, default_value_t = OutputFormat::Plain)]
    format: OutputFormat,

    /// Write the report here instead of stdout
    #[arg(long = "out", value_name = "PATH")]
    out: Option<PathBuf>,

    #[arg(long)]
    verbose: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliOptions {
    /// Step ids in proof order; never empty.
    pub steps: Vec<String>,
    pub abs_tol: f64,
    pub max_evals: usize,
    pub format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub verbose: bool,
}

impl CliOptions {
    pub fn quad_config(&self) -> QuadConfig {
        QuadConfig {
            abs_tol: self.abs_tol,
            max_evals: self.max_evals,
            ..QuadConfig::default()
        }
    }
}

/// Parses arguments, `argv[0]` being the program name.
///
/// `--help` and `--version` also come back as `Err`; their exit code is 0.
pub fn parse_args<I, T>(argv: I) -> Result<CliOptions, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = Args::try_parse_from(argv)?;
    let steps = if args.steps.is_empty() {
        STEP_IDS.iter().map(|s| s.to_string()).collect()
    } else {
        // proof order, duplicates dropped
        STEP_IDS
            .iter()
            .filter(|id| args.steps.iter().any(|s| s == *id))
            .map(|s| s.to_string())
            .collect()
    };
    Ok(CliOptions {
        steps,
        abs_tol: args.tol,
        max_evals: usize::try_from(args.max_evals).unwrap_or(usize::MAX),
        format: args.format,
        output_path: args.out,
        verbose: args.verbose,
    })
}

/// Runs the requested steps, writes the report, and returns the exit code.
pub fn execute(options: &CliOptions, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let ids: Vec<&str> = options.steps.iter().map(String::as_str).collect();
    let report = match run_steps(&ids, &options.quad_config()) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };

    let bytes = match (options.format, options.verbose) {
        (OutputFormat::Plain, true) => to_plain(&report, true).into_bytes(),
        (format, _) => serialize_report(&report, format.into()),
    };

    let written = match &options.output_path {
        Some(path) => fs::write(path, &bytes).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => stdout
            .write_all(&bytes)
            .and_then(|_| stdout.flush())
            .map_err(|e| format!("cannot write report: {e}")),
    };
    if let Err(msg) = written {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_INTERNAL;
    }

    if options.verbose {
        let passed = report.steps.iter().filter(|s| s.pass).count();
        let _ = writeln!(stderr, "{passed}/{} steps pass", report.steps.len());
    }
    if report.all_pass {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}

/// Whole program: parse, execute, map to an exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(argv) {
        Ok(options) => execute(&options, &mut io::stdout().lock(), &mut io::stderr().lock()),
        Err(e) => {
            let _ = e.print();
            match e.exit_code() {
                0 => EXIT_PASS,
                _ => EXIT_USAGE,
            }
        }
    }
}
