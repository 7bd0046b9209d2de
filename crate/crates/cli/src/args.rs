use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use parafree_core::quotients::DEFAULT_MAX_ROWS;

pub const DEFAULT_WEIGHT_BOUND: u64 = 30;
pub const DEFAULT_SLICE_LENGTH: usize = 6;

/// Gröbner–Shirshov bases, residual-nilpotence certificates and truncated
/// quotients for finitely presented augmented algebras.
///
/// INPUT is a presentation file or the name of a bundled example
/// (see `parafree example --list`). Reports are JSON on stdout.
///
/// Exit codes: 0 success, 1 usage or input error, 2 refuted or failed
/// check, 3 inconclusive up to the weight bound, 4 internal cap exceeded.
#[derive(Debug, Parser)]
#[command(name = "parafree", version)]
pub struct Cli {
    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct SeriesArgs {
    /// Series reductions stop once every surviving term has at least this
    /// weight (measured in the series order's grading).
    #[arg(long, default_value_t = DEFAULT_WEIGHT_BOUND)]
    pub weight_bound: u64,
}

#[derive(Debug, Clone, Args)]
pub struct TraceArgs {
    /// Include every rewriting step in the report.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Clone, Args)]
pub struct CapArgs {
    /// Upper limit on the dimension of the truncated relation ideal.
    #[arg(long, default_value_t = DEFAULT_MAX_ROWS)]
    pub max_rules: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Counterexample {
    /// A well-order that is not an N-order; rejected on load.
    One,
    /// Normal words that are a topological basis but not an I-basis.
    Two,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check admissibility of both orders and compare leading terms.
    OrderCheck {
        input: String,
        /// Exhaustive admissibility check on words up to this length.
        #[arg(long, default_value_t = 4)]
        max_length: usize,
    },
    /// Classical Gröbner–Shirshov check (maximal terms).
    GsCheck {
        input: String,
        #[command(flatten)]
        trace: TraceArgs,
    },
    /// Completion modulo all words of length `--trunc`.
    GsComplete {
        input: String,
        #[arg(short = 'n', long)]
        trunc: usize,
        #[command(flatten)]
        cap: CapArgs,
    },
    /// Power-series Gröbner–Shirshov check (minimal terms).
    SeriesGsCheck {
        input: String,
        #[command(flatten)]
        series: SeriesArgs,
        #[command(flatten)]
        trace: TraceArgs,
    },
    /// Residual-nilpotence certificate.
    Certify {
        input: String,
        #[command(flatten)]
        series: SeriesArgs,
        #[command(flatten)]
        trace: TraceArgs,
    },
    /// Dimensions of A/I^n and of the graded pieces I^k/I^(k+1).
    QuotientDims {
        input: String,
        #[arg(short = 'n', long)]
        trunc: usize,
        /// Also write the table as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Compare the graded dimensions with a free algebra of this rank.
        #[arg(long)]
        free_rank: Option<usize>,
        #[command(flatten)]
        cap: CapArgs,
    },
    /// Weight-graded H_2 via the Hopf formula (weight-homogeneous relations).
    H2 {
        input: String,
        /// Report weights 1..=max-weight.
        #[arg(long, default_value_t = 4)]
        max_weight: u64,
    },
    /// List or run a bundled example.
    Example {
        name: Option<String>,
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        series: SeriesArgs,
        /// Truncation degree for quotient tables.
        #[arg(short = 'n', long, default_value_t = 6)]
        trunc: usize,
        /// Operator identities are checked on normal words of length up to
        /// D, homotopy identities up to D - 1.
        #[arg(long, default_value_t = DEFAULT_SLICE_LENGTH)]
        slice_length: usize,
    },
    /// Regression runs for the two counterexamples.
    Counterexample {
        #[arg(value_enum)]
        which: Counterexample,
    },
}
