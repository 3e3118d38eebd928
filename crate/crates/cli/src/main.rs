//! `trimetric`: distances, metric circles, inclusion bounds and the
//! verification harness from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
//! 3 empty trace.

mod commands;
mod presets;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] trimetric::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(trimetric::Error::EmptyTrace(_)) => 3,
            _ => 2,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(CliError::Usage(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Svg,
    Csv,
    Obj,
}

#[derive(Debug, Parser)]
#[command(name = "trimetric", version, about = "Hyperbolic-type metrics of the unit ball")]
pub struct Cli {
    #[command(subcommand)]
    pub cmd: Cmd,
    #[command(flatten)]
    pub global: Global,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Seed of every random sample.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Bisection-residual target of the s evaluator.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Subcommand)]
pub enum Cmd {
    /// Distance between two points.
    Dist(DistArgs),
    /// Trace metric circles in the disk.
    Trace(TraceArgs),
    /// Revolve an s-circle into a 3D sphere mesh.
    Revolve(RevolveArgs),
    /// Inclusion radii between two metrics.
    Bounds(BoundsArgs),
    /// Run the inclusion suite or the conjecture sweep.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct DistArgs {
    /// s, j, jstar, rho or euclid.
    #[arg(long)]
    pub metric: String,
    /// Comma-separated coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long, allow_hyphen_values = true)]
    pub y: String,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[arg(long)]
    pub metric: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    /// Radius in the chosen metric.
    #[arg(long = "t", visible_aliases = ["k", "r", "rho", "j", "radius"])]
    pub radius: Option<f64>,
    /// Several radii, comma-separated (SVG only).
    #[arg(long)]
    pub radii: Option<String>,
    /// Boundary directions (s) or samples per branch.
    #[arg(long, default_value_t = 10_000)]
    pub n: usize,
    /// Residual filter of the s trace.
    #[arg(long, default_value_t = 1e-5)]
    pub eps: f64,
    /// Overlay auxiliary circles and witness points.
    #[arg(long)]
    pub aux: bool,
    /// fig1 .. fig5.
    #[arg(long)]
    pub preset: Option<String>,
}

#[derive(Debug, Args)]
pub struct RevolveArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub x: String,
    #[arg(long)]
    pub t: f64,
    /// Boundary directions of the planar trace.
    #[arg(long, default_value_t = 400)]
    pub n: usize,
    /// Revolution steps.
    #[arg(long, default_value_t = 32)]
    pub m: usize,
    #[arg(long, default_value_t = 1e-5)]
    pub eps: f64,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// s-euclid, jstar-euclid, s-jstar, s-j, j-rho, jstar-rho,
    /// s-rho-necessary, s-rho-sufficient or s-rho-conjecture.
    #[arg(long)]
    pub pair: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
    pub x: String,
    /// The given radius.
    #[arg(long = "t", visible_aliases = ["k", "r", "rho", "j", "value"])]
    pub value: f64,
    /// Which metric of the pair the radius belongs to.
    #[arg(long, value_enum, default_value_t = Given::First)]
    pub given: Given,
    /// Use the sharper inner radius valid for convex domains.
    #[arg(long)]
    pub convex: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Given {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum VerifyTarget {
    Suite,
    Conjecture,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub target: VerifyTarget,
    /// Grid side (suite: norms × radii; conjecture: sweep axis).
    #[arg(long)]
    pub grid: Option<usize>,
    /// Boundary directions per traced circle in the conjecture sweep.
    #[arg(long = "trace-n", default_value_t = 2000)]
    pub trace_n: usize,
    #[arg(long, default_value_t = 1e-5)]
    pub eps: f64,
    /// Samples per sphere in the suite.
    #[arg(long, default_value_t = 360)]
    pub samples: usize,
    /// Random pairs of the pointwise suite comparisons.
    #[arg(long, default_value_t = 200)]
    pub pairs: usize,
    /// Multiply every inner radius by 1 + inflate.
    #[arg(long, default_value_t = 0.0)]
    pub inflate: f64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
