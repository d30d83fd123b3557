use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand};

/// Build and verify constant scalar curvature Kähler profiles.
///
/// Rational values are accepted as `p/q`, integers or decimals; decimals
/// are converted exactly and the conversion is recorded in the document.
/// Exit codes: 0 success, 2 input error, 3 verification failure, 4 no
/// solution.
#[derive(Parser, Debug)]
#[command(name = "csck", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Rotationally symmetric profile on a punctured ball or space.
    Flat(FlatArgs),
    /// Momentum profile on a vector bundle over a Kähler–Einstein base.
    Bundle(BundleArgs),
    /// Momentum profile that closes up on the projective completion.
    Projective(ProjectiveArgs),
    /// Re-run the oracle suite on a stored profile document.
    Verify(VerifyArgs),
    /// Evaluate a parameter grid described by a JSON sweep file.
    Sweep(SweepArgs),
    /// Emit the data behind the reference plots.
    PlotData(PlotArgs),
}

/// Thresholds of the oracle suite; unset values keep their defaults.
#[derive(Args, Debug, Clone, Default)]
pub struct ThresholdArgs {
    /// Maximum curvature residual [default: 1e-5].
    #[arg(long, value_name = "X")]
    pub curvature_tol: Option<f64>,
    /// Maximum gap between ODE and quadrature potentials [default: 1e-7].
    #[arg(long, value_name = "X")]
    pub ode_tol: Option<f64>,
    /// Relative tolerance on fitted asymptotic coefficients [default: 0.01].
    #[arg(long, value_name = "X")]
    pub fit_tol: Option<f64>,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write the profile document to PATH instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Write sampled profile data as CSV.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// Write the sampled profile as an SVG polyline.
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    /// Number of samples in the CSV/SVG output.
    #[arg(long, value_name = "N", default_value_t = 401)]
    pub samples: usize,
    /// Solver tolerance: bisection width and root refinement.
    #[arg(long, value_name = "X", default_value_t = 1e-10)]
    pub tol: f64,
    /// Skip the oracle suite.
    #[arg(long)]
    pub no_verify: bool,
    #[command(flatten)]
    pub thresholds: ThresholdArgs,
}

#[derive(Args, Debug)]
pub struct FlatArgs {
    /// Complex dimension n ≥ 2.
    #[arg(long)]
    pub n: u32,
    /// Puncture value a > 0 of the profile.
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    /// Scalar curvature c (a·c < n(n−1)).
    #[arg(long, allow_hyphen_values = true)]
    pub c: String,
    /// Start of the sampled t range.
    #[arg(long, allow_hyphen_values = true)]
    pub t_min: Option<f64>,
    /// End of the sampled t range.
    #[arg(long, allow_hyphen_values = true)]
    pub t_max: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct BundleArgs {
    /// Rank of the bundle.
    #[arg(long)]
    pub m: u32,
    /// Complex dimension of the base.
    #[arg(long)]
    pub n: u32,
    /// Curvature eigenvalue λ of the bundle.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Scalar curvature c_M of the base.
    #[arg(long = "cM", allow_hyphen_values = true)]
    pub c_m: String,
    /// Scalar curvature of the profile (λ ≥ 0).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "at_c0")]
    pub c: Option<String>,
    /// Use the supremum c₀ of the allowable curvatures (λ ≥ 0).
    #[arg(long)]
    pub at_c0: bool,
    /// Left endpoint a > 0 of the momentum interval.
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    /// Which solution to store when a solve has several (0-based).
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    /// End of the sampled τ range for unbounded intervals.
    #[arg(long, allow_hyphen_values = true)]
    pub tau_max: Option<f64>,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("closing").required(true).args(["c_m", "b"])))]
pub struct ProjectiveArgs {
    #[arg(long)]
    pub m: u32,
    #[arg(long)]
    pub n: u32,
    /// Curvature eigenvalue λ ≠ 0.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    /// Left endpoint a > 0 of the momentum interval.
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    /// Solve for the right endpoint b given the base curvature.
    #[arg(long = "cM", allow_hyphen_values = true)]
    pub c_m: Option<String>,
    /// Prescribe the right endpoint b and solve for c_M and c.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Which root b to store when there are several (0-based).
    #[arg(long, default_value_t = 0)]
    pub root: usize,
    #[command(flatten)]
    pub out: OutputArgs,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Profile document to verify.
    pub document: PathBuf,
    /// Write the verification report to PATH instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    #[command(flatten)]
    pub thresholds: ThresholdArgs,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    /// JSON sweep grid file.
    pub spec: PathBuf,
    /// Write the CSV to PATH instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    /// Solver tolerance used for every row.
    #[arg(long, value_name = "X", default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("which").required(true).args(["dataset", "all", "list"])))]
pub struct PlotArgs {
    /// Name of the dataset to emit.
    #[arg(long)]
    pub dataset: Option<String>,
    /// Emit every dataset into --dir as NAME.csv and NAME.svg.
    #[arg(long, requires = "dir")]
    pub all: bool,
    /// List the dataset names and descriptions.
    #[arg(long)]
    pub list: bool,
    #[arg(long, value_name = "DIR")]
    pub dir: Option<PathBuf>,
    /// Write the CSV to PATH instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub csv: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub svg: Option<PathBuf>,
    /// Number of samples per curve.
    #[arg(long, value_name = "N", default_value_t = 401)]
    pub samples: usize,
}
