//! Command-line front end: argument parsing, suite dispatch and reports.

pub mod suites;

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::SliceError;
pub use suites::{SuiteConfig, SuiteReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "octoslice", version, about = "Verification suites for octonionic slice analysis")]
pub struct Cli {
    /// Seed for every random probe set.
    #[arg(long, global = true, default_value_t = 7)]
    pub seed: u64,
    /// Base probe count; algebra laws use ten times as many cases.
    #[arg(long, global = true, default_value_t = 1000, value_parser = clap::value_parser!(u64).range(1..))]
    pub probes: u64,
    /// Replaces the default tolerance of every suite.
    #[arg(long, global = true, value_parser = positive_f64)]
    pub tol: Option<f64>,
    /// Report file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Multiplication table, algebra laws and operator identities.
    VerifyAlgebra,
    /// Representation formulas, stems, splitting and regularity checks.
    VerifySlice {
        /// Adds a function that is not slice to the sliceness suite.
        #[arg(long)]
        inject_non_slice: bool,
    },
    /// Taylor reconstruction, the star exponential and the modulus bounds.
    TaylorDemo,
    /// The branch-tracked square root and its non-sliceness residual.
    SqrtExample,
}

fn positive_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|e| format!("{e}"))?;
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err("must be a positive number".into())
    }
}

impl Cli {
    pub fn suite_config(&self) -> SuiteConfig {
        SuiteConfig {
            seed: self.seed,
            probes: self.probes as usize,
            tol: self.tol,
            inject_non_slice: matches!(
                self.command,
                Command::VerifySlice {
                    inject_non_slice: true
                }
            ),
        }
    }
}

/// Runs the selected command and returns its reports sorted by suite name.
pub fn run_suites(cli: &Cli) -> Result<Vec<SuiteReport>, SliceError> {
    let cfg = cli.suite_config();
    let mut reports = match cli.command {
        Command::VerifyAlgebra => suites::algebra_suites(&cfg),
        Command::VerifySlice { .. } => suites::slice_suites(&cfg)?,
        Command::TaylorDemo => suites::taylor_suites(&cfg)?,
        Command::SqrtExample => suites::sqrt_suites(&cfg)?,
    };
    reports.sort_by(|a, b| a.suite.cmp(&b.suite));
    Ok(reports)
}

pub fn write_reports<W: Write>(reports: &[SuiteReport], format: Format, mut w: W) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut w, reports)?;
            writeln!(w)
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            csv.write_record(["suite", "cases", "max_residual", "tolerance", "pass"])?;
            for r in reports {
                csv.write_record([
                    r.suite.clone(),
                    r.cases.to_string(),
                    r.max_residual.to_string(),
                    r.tolerance.to_string(),
                    r.pass.to_string(),
                ])?;
            }
            csv.flush()
        }
    }
}

/// Entry point of the binary. Exit codes: 0 all suites pass, 1 a suite
/// failed, 2 usage or I/O error.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let reports = match run_suites(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let written = match &cli.out {
        Some(path) => File::create(path).and_then(|f| write_reports(&reports, cli.format, f)),
        None => write_reports(&reports, cli.format, io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if reports.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
