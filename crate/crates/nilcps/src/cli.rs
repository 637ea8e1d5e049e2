//! Argument parsing and dispatch.

use std::path::PathBuf;

use clap::{Parser, Subcommand};
use nilcps_core::geodesic::GeodesicParams;
use nilcps_core::LieAlgebra;
use serde_json::Value;

use crate::commands::{self, CommandError, Outcome};
use crate::json::{self, cps_from_file, load_algebra, read_json, structure_from_json};
use crate::witness_data;

#[derive(Debug, Parser)]
#[command(
    name = "nilcps",
    version,
    about = "Complex product structures on nilpotent Lie algebras"
)]
pub struct Cli {
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// JSON output (the only format).
    #[arg(long, global = true, default_value_t = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a Salamon string or algebra file and print its bracket table.
    Parse {
        salamon: Option<String>,
        #[arg(long)]
        algebra: Option<String>,
    },
    /// Integrability of J and/or E and CPS validity.
    CheckStructure {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        cps: PathBuf,
    },
    /// Torsion, parallelism, curvature and completeness of the canonical connection.
    ConnectionReport {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        cps: PathBuf,
    },
    /// Verify the classification table.
    VerifyCatalog {
        /// Witness file; defaults to the shipped one.
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// Lift a CPS to a hypercomplex structure and report its Obata connection.
    Hypercomplex {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        cps: PathBuf,
    },
    /// Numeric geodesic certificate for the canonical connection.
    Geodesic {
        #[arg(long)]
        algebra: Option<String>,
        #[arg(long)]
        cps: PathBuf,
    },
    /// Nonexistence argument for an excluded algebra.
    Nonexistence { salamon: String },
}

fn algebra_arg(positional: Option<&String>, flag: Option<&String>) -> Result<LieAlgebra, CommandError> {
    match flag.or(positional) {
        Some(a) => Ok(load_algebra(a)?),
        None => Err(CommandError::Usage("an algebra is required".into())),
    }
}

fn load_cps(algebra: Option<&String>, cps: &PathBuf) -> Result<nilcps_core::structures::Cps, CommandError> {
    let file = structure_from_json(&read_json(cps)?)?;
    let g = algebra.map(|a| load_algebra(a)).transpose()?;
    Ok(cps_from_file(file, g)?)
}

fn dispatch(cli: &Cli) -> Result<Outcome, CommandError> {
    let params = GeodesicParams {
        seed: cli.seed,
        ..GeodesicParams::default()
    };
    match &cli.command {
        Command::Parse { salamon, algebra } => Ok(commands::parse(&algebra_arg(salamon.as_ref(), algebra.as_ref())?)),
        Command::CheckStructure { algebra, cps } => {
            let file = structure_from_json(&read_json(cps)?)?;
            let g = match algebra {
                Some(a) => load_algebra(a)?,
                None => file
                    .algebra
                    .clone()
                    .ok_or_else(|| CommandError::Usage("an algebra is required".into()))?,
            };
            commands::check_structure(&g, file)
        }
        Command::ConnectionReport { algebra, cps } => {
            commands::connection_report(&load_cps(algebra.as_ref(), cps)?, &params)
        }
        Command::VerifyCatalog { data } => {
            let entries = match data {
                Some(p) => witness_data::entries_from_json(&read_json(p)?)?,
                None => witness_data::builtin_entries()?,
            };
            Ok(commands::verify_catalog(&entries, cli.seed))
        }
        Command::Hypercomplex { algebra, cps } => commands::hypercomplex_report(&load_cps(algebra.as_ref(), cps)?),
        Command::Geodesic { algebra, cps } => commands::geodesic(&load_cps(algebra.as_ref(), cps)?, &params),
        Command::Nonexistence { salamon } => commands::nonexistence(salamon, cli.seed),
    }
}

/// Runs one command: exit status (0 all checks passed, 1 a check failed,
/// 2 an error) and the JSON report.
pub fn execute(cli: &Cli) -> (i32, Value) {
    match dispatch(cli) {
        Ok(o) => (if o.passed { 0 } else { 1 }, o.report),
        Err(e) => (2, e.to_json()),
    }
}

/// Parses `args` (program name first) and runs; returns the exit status and
/// the rendered output.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.to_string());
        }
    };
    let (code, report) = execute(&cli);
    let text = json::to_pretty(&report);
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, &text) {
            let err = CommandError::Json(json::JsonError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            });
            return (2, json::to_pretty(&err.to_json()));
        }
        return (code, String::new());
    }
    (code, text)
}
