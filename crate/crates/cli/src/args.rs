//! Command-line grammar.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "canrel", version, about = "Algebra, representations and transforms of CR(1,3)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Structure tables.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Truncated representations.
    #[command(subcommand)]
    Rep(RepCmd),
    /// Measure Casimir scalars of an archived representation.
    Casimir(CasimirArgs),
    /// Apply a finite boost to one phase-space point.
    Boost(BoostArgs),
    /// Contraction limit b, c -> infinity.
    #[command(subcommand)]
    Contract(ContractCmd),
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCmd {
    /// Check antisymmetry and the Jacobi identity; every basis when none is given.
    Check {
        #[arg(long)]
        basis: Option<String>,
        #[command(flatten)]
        out: Output,
    },
    /// Export a structure table.
    Table {
        #[arg(long, default_value = "real")]
        basis: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Subcommand)]
pub enum RepCmd {
    /// Build a representation and write it as an archive directory.
    Build(BuildArgs),
    /// Check closure and hermiticity of an archived representation.
    Verify {
        dir: PathBuf,
        #[arg(long)]
        margin: Option<usize>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CaseArg {
    Timelike,
    Null,
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long, value_enum)]
    pub case: CaseArg,
    #[arg(long)]
    pub kappa0: f64,
    #[arg(long, default_value_t = 0)]
    pub kappa1: u32,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub kappa2: i32,
    #[arg(long, default_value_t = 0)]
    pub nu2: u32,
    #[arg(long)]
    pub nmax: Option<u32>,
    #[arg(long)]
    pub jmax: Option<u32>,
    #[arg(long)]
    pub kmax: u32,
    /// Defaults to 2, or less when the truncation is smaller.
    #[arg(long)]
    pub margin: Option<usize>,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct CasimirArgs {
    pub dir: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "0,1,2,3")]
    pub orders: Vec<usize>,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Args)]
pub struct Constants {
    #[arg(long, default_value_t = 1.0)]
    pub b: f64,
    #[arg(long, default_value_t = 1.0)]
    pub c: f64,
}

#[derive(Debug, Args)]
pub struct BoostArgs {
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true, default_value = "0,0,0")]
    pub beta: [f64; 3],
    #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true, default_value = "0,0,0")]
    pub gamma: [f64; 3],
    #[command(flatten)]
    pub constants: Constants,
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub point: [f64; 8],
    #[command(flatten)]
    pub out: Output,
}

#[derive(Debug, Subcommand)]
pub enum ContractCmd {
    /// Finite boost at b = c = 10^s over a range of s.
    Sweep {
        #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true, default_value = "0,0,0")]
        beta: [f64; 3],
        #[arg(long, value_parser = parse_vec3, allow_hyphen_values = true, default_value = "0,0,0")]
        gamma: [f64; 3],
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: [f64; 8],
        #[arg(long, value_parser = parse_sweep, allow_hyphen_values = true, default_value = "2..5:4")]
        sweep: Sweep,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Kv,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

fn parse_floats<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| format!("'{x}' is not a number")))
        .collect::<Result<_, _>>()?;
    v.try_into().map_err(|v: Vec<f64>| format!("expected {N} comma-separated numbers, got {}", v.len()))
}

fn parse_vec3(s: &str) -> Result<[f64; 3], String> {
    parse_floats::<3>(s)
}

fn parse_point(s: &str) -> Result<[f64; 8], String> {
    parse_floats::<8>(s)
}

/// `lo..hi:steps`.
fn parse_sweep(s: &str) -> Result<Sweep, String> {
    let err = || format!("expected lo..hi:steps, got '{s}'");
    let (range, steps) = s.rsplit_once(':').ok_or_else(err)?;
    let (lo, hi) = range.split_once("..").ok_or_else(err)?;
    let sweep = Sweep {
        lo: lo.trim().parse().map_err(|_| err())?,
        hi: hi.trim().parse().map_err(|_| err())?,
        steps: steps.trim().parse().map_err(|_| err())?,
    };
    if sweep.steps == 0 || sweep.hi < sweep.lo {
        return Err(err());
    }
    Ok(sweep)
}
