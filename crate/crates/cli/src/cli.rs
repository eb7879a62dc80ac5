use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(
    name = "helixforge",
    version,
    about = "Helices from P-Lucas and P-Fibonacci sequences"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print L_k and/or F_k for a range of k
    Seq(SeqArgs),
    /// Evaluate g, h or a helix map at a real t
    Eval(EvalArgs),
    /// Sample helix maps to a file
    Helix(HelixArgs),
    /// Sample a double helix joined by rungs
    Compose(ComposeArgs),
    /// Check identities in exact arithmetic
    Verify(VerifyArgs),
    /// Emit Pell certificates (L_k, F_k)
    Pell(PellArgs),
    /// Solve for identity coefficients with the exact oracle
    Discover(DiscoverArgs),
}

#[derive(Debug, Args)]
pub struct RangeArgs {
    #[arg(long = "k-min", allow_negative_numbers = true)]
    pub k_min: Option<i64>,
    #[arg(long = "k-max", allow_negative_numbers = true)]
    pub k_max: Option<i64>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub tmin: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub tmax: Option<f64>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long = "max-points")]
    pub max_points: Option<usize>,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// csv | json | obj | svg
    #[arg(long)]
    pub format: Option<String>,
    /// xy | xz | yz (SVG only)
    #[arg(long)]
    pub projection: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    #[arg(long = "P", allow_negative_numbers = true)]
    pub p: Option<String>,
    /// lucas | fibonacci | both
    #[arg(long)]
    pub kind: Option<String>,
    #[command(flatten)]
    pub range: RangeArgs,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    #[arg(long = "P", allow_negative_numbers = true)]
    pub p: Option<String>,
    /// g | h | psi1..psi7 | lmap
    #[arg(long)]
    pub map: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub t: f64,
}

#[derive(Debug, Args)]
pub struct HelixArgs {
    #[arg(long = "P", allow_negative_numbers = true)]
    pub p: Option<String>,
    /// One map, or a comma-separated list for a coaxial bundle
    #[arg(long)]
    pub map: Option<String>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ComposeArgs {
    #[arg(long = "P", allow_negative_numbers = true)]
    pub p: Option<String>,
    #[arg(long)]
    pub map: Option<String>,
    #[arg(long = "P-b", allow_negative_numbers = true)]
    pub p_b: Option<String>,
    #[arg(long = "map-b")]
    pub map_b: Option<String>,
    #[arg(long = "rung-stride")]
    pub rung_stride: Option<usize>,
    #[command(flatten)]
    pub grid: GridArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "P", allow_negative_numbers = true)]
    pub p: Option<String>,
    /// consistent | all | <identity name>[,<identity name>...]
    #[arg(long)]
    pub identity: Option<String>,
    #[command(flatten)]
    pub range: RangeArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PellArgs {
    #[arg(long = "P", allow_negative_numbers = true)]
    pub p: Option<String>,
    #[command(flatten)]
    pub range: RangeArgs,
}

#[derive(Debug, Args)]
pub struct DiscoverArgs {
    /// psi4 | psi5 | psi6 | psi7 | psi7-free
    #[arg(long)]
    pub template: Option<String>,
    /// Comma-separated P values, e.g. 1,2,3
    #[arg(long = "p-set")]
    pub p_set: Option<String>,
    /// Comma-separated k values or an inclusive range a..b
    #[arg(long = "k-set", allow_hyphen_values = true)]
    pub k_set: Option<String>,
}
