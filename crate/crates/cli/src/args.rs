use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use levinger_core::analysis::{DEFAULT_CONCAVITY_TOL, DEFAULT_FD_STEP, DEFAULT_GRID_SIZE};
use serde::Serialize;

#[derive(Debug, Parser)]
#[command(name = "levinger", version, about = "Spectral radius along the homotopy (1-t)A + tA^T")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,

    /// Output file; standard output when absent or `-`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectral radius and spectrum of B(t) at one t.
    Eval {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, default_value_t = 0.5)]
        t: f64,
    },
    /// Sample r(t) and its derivatives on a uniform grid.
    Scan {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        numerics: Numerics,
    },
    /// Run the acceptance checks, or per-matrix checks when a source is given.
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        numerics: Numerics,
        /// Seed for the randomized checks.
        #[arg(long, default_value_t = crate::verify::DEFAULT_SEED)]
        seed: u64,
    },
    /// Emit the data behind one of the six figures.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=6))]
        id: u8,
        #[command(flatten)]
        numerics: Numerics,
    },
    /// Random search for matrices with a nonconcave Levinger function.
    Search(SearchArgs),
    /// Symmetric and skew parts with their derived quantities.
    Decompose {
        #[command(flatten)]
        source: SourceArgs,
    },
}

/// Where the matrix comes from. Exactly one of `--family`, `--matrix`,
/// `--spec` must be given.
#[derive(Debug, Clone, Default, Args, Serialize)]
pub struct SourceArgs {
    /// Family kind, e.g. two-by-two, tridiag-toeplitz, fiedler-toeplitz,
    /// fiedler-circulant, weighted-shift, cyclic-weighted-shift, circuit,
    /// toeplitz-4param, ex1, four-by-four.
    #[arg(long)]
    pub family: Option<String>,
    /// Matrix file: dimension on the first line, then one row per line.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Family spec file; several specs may be separated by `---` lines.
    #[arg(long)]
    pub spec: Option<PathBuf>,

    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub d: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub u: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub v: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub h: Option<f64>,
    /// Comma-separated weights.
    #[arg(long)]
    pub weights: Option<String>,
    /// Comma-separated one-based cycle indices.
    #[arg(long)]
    pub cycle: Option<String>,
}

impl SourceArgs {
    pub fn is_empty(&self) -> bool {
        self.family.is_none() && self.matrix.is_none() && self.spec.is_none()
    }
}

#[derive(Debug, Clone, Copy, Args, Serialize)]
pub struct Numerics {
    /// Grid points on [0, 1].
    #[arg(long = "grid", default_value_t = DEFAULT_GRID_SIZE)]
    pub grid_size: usize,
    /// Finite-difference step.
    #[arg(long, default_value_t = DEFAULT_FD_STEP)]
    pub fd_step: f64,
    /// Concavity tolerance.
    #[arg(long, default_value_t = DEFAULT_CONCAVITY_TOL)]
    pub tol: f64,
}

impl Default for Numerics {
    fn default() -> Self {
        Self {
            grid_size: DEFAULT_GRID_SIZE,
            fd_step: DEFAULT_FD_STEP,
            tol: DEFAULT_CONCAVITY_TOL,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DrawMode {
    /// Entries uniform on [0, 1], each zeroed with probability `sparsity`.
    Dense,
    /// Tridiagonal Toeplitz matrices with uniform a, b, c.
    TridiagToeplitz,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of matrices drawn.
    #[arg(long, default_value_t = 100)]
    pub draws: usize,
    /// Dimension of each draw.
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    /// Probability that an entry is zero.
    #[arg(long, default_value_t = 0.5)]
    pub sparsity: f64,
    #[arg(long, value_enum, default_value_t = DrawMode::Dense)]
    pub mode: DrawMode,
    #[arg(long = "grid", default_value_t = 201)]
    pub grid_size: usize,
    #[arg(long, default_value_t = DEFAULT_CONCAVITY_TOL)]
    pub tol: f64,
}
