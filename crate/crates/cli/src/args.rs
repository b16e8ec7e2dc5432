use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "arcbeta",
    version,
    about = "Beta-function identities and the generalized arcsine distribution"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = OutputFormat::Json, global = true)]
    pub format: OutputFormat,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a single quantity.
    #[command(subcommand)]
    Eval(EvalKind),
    /// Central moments μ_1..μ_K (closed form when s = t, quadrature otherwise).
    Moments(MomentsArgs),
    /// Compare closed-form identities with quadrature over the parameter sweep.
    Verify(VerifyArgs),
    /// Draw inverse-transform samples and test them against the CDF.
    Sample(SampleArgs),
    /// Argmax fractions of simple random walks, tested against the arcsine law.
    Simulate(SimulateArgs),
}

#[derive(Debug, Subcommand)]
pub enum EvalKind {
    /// Beta function B(s, t).
    Beta(ShapeArgs),
    /// Density at x.
    Pdf(PointArgs),
    /// Cumulative distribution at x.
    Cdf(PointArgs),
    /// Quantile at probability p.
    Quantile(ProbabilityArgs),
    /// Mean of the distribution.
    Mean(DistArgs),
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ShapeArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub s: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub t: f64,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct DistArgs {
    /// Lower end of the support.
    #[arg(long, allow_hyphen_values = true)]
    pub r1: f64,
    /// Upper end of the support.
    #[arg(long, allow_hyphen_values = true)]
    pub r2: f64,
    #[command(flatten)]
    pub shape: ShapeArgs,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct PointArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub x: f64,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct ProbabilityArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub p: f64,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    /// Highest moment order.
    #[arg(long)]
    pub max_k: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    #[value(name = "thm1", alias = "shifted")]
    Shifted,
    #[value(name = "thm2-upper", alias = "split-upper")]
    SplitUpper,
    #[value(name = "thm2-lower", alias = "split-lower")]
    SplitLower,
    #[value(name = "half-interval")]
    HalfInterval,
    All,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    /// Relative tolerance for a row to pass.
    #[arg(long, default_value_t = 1e-8)]
    pub rel_tol: f64,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub dist: DistArgs,
    /// Number of samples.
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct SimulateArgs {
    /// Walk length.
    #[arg(long)]
    pub steps: u32,
    /// Number of walks.
    #[arg(long)]
    pub paths: usize,
    #[arg(long)]
    pub seed: u64,
}
