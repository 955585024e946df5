use std::ops::RangeInclusive;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use xconn_core::closed_form::Family;

#[derive(Debug, Parser)]
#[command(
    name = "xconn",
    version,
    about = "Exact g-extra connectivity of strong products"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a path, cycle or complete graph, or a family product.
    Gen(GenArgs),
    /// Build the strong or Cartesian product of two graph files.
    Product(ProductArgs),
    /// Compute κ_g exactly.
    Exact(ExactArgs),
    /// Evaluate the closed form for a family.
    Formula(FormulaArgs),
    /// Build and validate the explicit witness cuts.
    Witness(WitnessArgs),
    /// Classify a cut of a product as an I-set, an L-set, or neither.
    ClassifyCut(CutArgs),
    /// Check the per-layer lower bounds on a cut of a product.
    CheckLayers(CheckLayersArgs),
    /// Reconcile formula, solver and witnesses over a parameter grid.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Args)]
pub struct Source {
    #[arg(long, value_parser = parse_family, conflicts_with = "file")]
    pub family: Option<Family>,
    #[arg(long, requires = "family")]
    pub m: Option<usize>,
    #[arg(long, requires = "family")]
    pub n: Option<usize>,
    /// Graph JSON, as written by `gen` or `product`.
    #[arg(long)]
    pub file: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BasicGraph {
    Path,
    Cycle,
    Complete,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum, conflicts_with = "family", requires = "order")]
    pub graph: Option<BasicGraph>,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long, value_parser = parse_family, required_unless_present = "graph", requires_all = ["m", "n"])]
    pub family: Option<Family>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KindArg {
    Strong,
    Cartesian,
}

#[derive(Debug, Args)]
pub struct ProductArgs {
    #[arg(long)]
    pub left: PathBuf,
    #[arg(long)]
    pub right: PathBuf,
    #[arg(long, value_enum, default_value = "strong")]
    pub kind: KindArg,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SolverArg {
    Fragment,
    Subset,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub source: Source,
    #[arg(long, default_value_t = 0)]
    pub g: usize,
    #[arg(long, value_enum, default_value = "fragment")]
    pub solver: SolverArg,
    /// Check budget for the subset solver.
    #[arg(long)]
    pub budget: Option<u64>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// List every minimum cut (fragment solver only).
    #[arg(long)]
    pub all: bool,
    /// Also report search statistics, including wall time.
    #[arg(long)]
    pub stats: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct FormulaArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub g: usize,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WhichArg {
    S1,
    S2,
    S3,
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub g: usize,
    /// Only this witness; all three by default.
    #[arg(long, value_enum, ignore_case = true)]
    pub which: Option<WhichArg>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CutArgs {
    #[command(flatten)]
    pub source: Source,
    /// Vertex ids, comma separated.
    #[arg(long, value_delimiter = ',', required_unless_present = "cut_file")]
    pub cut: Vec<usize>,
    /// JSON array of vertex ids.
    #[arg(long, conflicts_with = "cut")]
    pub cut_file: Option<PathBuf>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct CheckLayersArgs {
    #[command(flatten)]
    pub cut: CutArgs,
    /// Also check that the cut is a g-extra cut.
    #[arg(long)]
    pub g: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_parser = parse_family, value_delimiter = ',', required = true)]
    pub family: Vec<Family>,
    /// Inclusive range such as `3..6`, or a single value.
    #[arg(long, value_parser = parse_range)]
    pub m: RangeInclusive<usize>,
    #[arg(long, value_parser = parse_range)]
    pub n: RangeInclusive<usize>,
    /// Explicit g values; every in-guard g by default.
    #[arg(long, value_delimiter = ',')]
    pub g: Vec<usize>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Largest product solved exactly; bigger cells are inconclusive.
    #[arg(long, default_value_t = xconn_core::verifier::DEFAULT_FULL_CEILING)]
    pub full_ceiling: usize,
    /// Largest product whose minimum cuts are all enumerated.
    #[arg(long, default_value_t = xconn_core::verifier::DEFAULT_ENUM_CEILING)]
    pub enum_ceiling: usize,
    /// Add a runtime column. Output is no longer reproducible.
    #[arg(long)]
    pub timings: bool,
    #[command(flatten)]
    pub output: Output,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: xconn_core::Error| e.to_string())
}

/// `a..b` and `a..=b` are both inclusive; a bare `a` is `a..=a`.
pub fn parse_range(s: &str) -> Result<RangeInclusive<usize>, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| format!("invalid range `{s}`"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(s)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(format!("empty range `{s}`"));
    }
    Ok(lo..=hi)
}
