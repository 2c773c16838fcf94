mod commands;
mod error;
mod output;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pade_core::approximant::SINGULAR_TOL;
use pade_core::geometry::DEFAULT_DENSITY;
use pade_core::{Exact, Float};

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "pade", version, about = "Padé tables, membership tests, density constructions and convergence runs")]
pub struct Cli {
    /// Arithmetic: exact Gaussian rationals or complex f64.
    #[arg(long, value_enum, default_value_t = Mode::Float, global = true)]
    pub mode: Mode,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Rings per disk or annulus grid (four times as many angles per ring).
    #[arg(long, default_value_t = DEFAULT_DENSITY, global = true)]
    pub grid_density: usize,
    /// Float-mode singularity threshold for Hankel determinants.
    #[arg(long, default_value_t = SINGULAR_TOL, global = true)]
    pub tol: f64,
    /// Write the payload here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Exact,
    Float,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleKind {
    Exp,
    Geometric,
    Rational,
    Polynomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    Poly,
    Rational,
    PolySmooth,
    RationalSmooth,
}

/// Coefficient lists are comma-separated, in ascending powers of z.
#[derive(Debug, Clone, Args)]
pub struct FunctionArgs {
    /// Numerator coefficients of a rational function.
    #[arg(long, allow_hyphen_values = true)]
    pub num: Option<String>,
    /// Denominator coefficients of a rational function.
    #[arg(long, allow_hyphen_values = true)]
    pub den: Option<String>,
    /// Coefficients of a polynomial.
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
}

#[derive(Debug, Clone, Args)]
pub struct OracleArgs {
    #[arg(long, value_enum)]
    pub oracle: OracleKind,
    #[command(flatten)]
    pub function: FunctionArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hankel verdicts for every (p, q) up to (p_max, q_max), with sup errors
    /// on disk(center, radius) for member cells.
    Table {
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        center: String,
        #[arg(long, default_value_t = 4)]
        p_max: usize,
        #[arg(long, default_value_t = 4)]
        q_max: usize,
        #[arg(long, default_value = "1/2")]
        radius: String,
    },
    /// One (p, q) cell: verdict, predicted membership and reproduction check.
    Membership {
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        center: String,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long, default_value = "1/2")]
        radius: String,
    },
    /// Perturb a polynomial or rational function into its own [p/q] approximant.
    Construct {
        #[arg(long, value_enum)]
        kind: ConstructKind,
        #[command(flatten)]
        function: FunctionArgs,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        eps: String,
        /// Highest derivative order (smooth kinds only).
        #[arg(long)]
        order: Option<usize>,
        /// Sample set T: disk:C:R, annulus:C:R1:R2, circle:C:R[:COUNT] or points:Z1;Z2;…
        #[arg(long, default_value = "disk:0:1", allow_hyphen_values = true)]
        region: String,
        /// Semicolon-separated centers for the self-reproduction check.
        #[arg(long, default_value = "0;1/4i;-1/2", allow_hyphen_values = true)]
        centers: String,
    },
    /// Sup errors of [p_n/q_n] over n = 1..max_n along an index family.
    Converge {
        #[command(flatten)]
        oracle: OracleArgs,
        /// diagonal, row:Q, column:P or explicit:P/Q,P/Q,…
        #[arg(long, default_value = "diagonal")]
        family: String,
        /// Centers L as a region (see construct --region).
        #[arg(long, default_value = "points:0", allow_hyphen_values = true)]
        centers: String,
        /// Compact set K as a region.
        #[arg(long, default_value = "disk:0:1", allow_hyphen_values = true)]
        region: String,
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        /// Derivative orders 0..=s.
        #[arg(long, default_value_t = 0)]
        orders: usize,
    },
}

fn run(cli: &Cli) -> Result<(), CliError> {
    let report = match cli.mode {
        Mode::Exact => commands::dispatch::<Exact>(cli)?,
        Mode::Float => commands::dispatch::<Float>(cli)?,
    };
    let text = match cli.format {
        Format::Json => report.json()?,
        Format::Csv => report.csv()?,
    };
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
