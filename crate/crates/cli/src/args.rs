use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "bts", version, about = "Beta-expansions, lexicographic subshifts and survivor-set dimensions")]
pub struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,

    /// Maximum halvings for one refinement or sign decision.
    #[arg(long, global = true, env = "BTS_PRECISION_CAP", default_value_t = 4096)]
    pub precision_cap: u32,

    /// Digits examined before a comparison against a streamed α(β) gives up.
    #[arg(long, global = true, default_value_t = 512)]
    pub depth: usize,

    /// Worker threads for `sweep` and `holder` (default: available cores).
    #[arg(long, global = true, env = "BTS_JOBS")]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Greedy or quasi-greedy β-expansion of x.
    Expand(ExpandArgs),
    /// The quasi-greedy expansion α(β) of 1.
    Alpha(BetaArg),
    /// Parry admissibility of a sequence.
    Admissible(AdmissibleArgs),
    /// The base with a given finite greedy expansion of 1.
    SolveBeta(SolveBetaArgs),
    /// Normalize a pair (t, u) to the extremal members of 𝒦(t, u).
    Normalize(PairArgs),
    /// Topological entropy of 𝒦(t, u).
    Entropy(EntropyArgs),
    /// Entropy of the binary shift avoiding a list of words, by counting.
    SftEntropy(SftArgs),
    /// Hausdorff dimension of the survivor set K(t).
    Dim(TArgs),
    /// Whether t is a bifurcation parameter, and its stability interval if not.
    Bifurcation(TArgs),
    /// η(t) on a uniform grid, written as CSV.
    Sweep(SweepArgs),
    /// Local Hölder exponent estimate of η at t.
    Holder(HolderArgs),
}

#[derive(Debug, Args)]
pub struct BetaArg {
    /// Base: `2`, `3/2`, `1.5`, `poly:c_n,...,c_0` or `one-exp:DIGITS`.
    #[arg(long)]
    pub beta: String,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Kind {
    Greedy,
    Quasi,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub beta: BetaArg,
    /// Value to expand: `p/q`, a decimal, or `seq:LITERAL`.
    #[arg(long)]
    pub x: String,
    #[arg(long, value_enum, default_value_t = Kind::Greedy)]
    pub kind: Kind,
    /// Digits to print when the expansion is not found to be eventually periodic.
    #[arg(long, default_value_t = 64)]
    pub digits: usize,
}

#[derive(Debug, Args)]
pub struct AdmissibleArgs {
    #[command(flatten)]
    pub beta: BetaArg,
    #[arg(long)]
    pub seq: String,
}

#[derive(Debug, Args)]
pub struct SolveBetaArgs {
    /// Greedy expansion d_1…d_m of 1.
    #[arg(long)]
    pub one_exp: String,
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub t: String,
    #[arg(long)]
    pub u: String,
    /// Apply the θ step before τ.
    #[arg(long)]
    pub theta_first: bool,
    /// Compare against the original endpoints instead of the updated ones.
    #[arg(long)]
    pub unoptimized: bool,
}

#[derive(Debug, Args)]
pub struct EntropyArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    /// List the members when the subshift is finite, up to this period.
    #[arg(long)]
    pub enumerate: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SftArgs {
    /// Comma-separated forbidden words.
    #[arg(long, value_delimiter = ',')]
    pub forbid: Vec<String>,
    #[arg(long, default_value_t = 40)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct TArgs {
    #[command(flatten)]
    pub beta: BetaArg,
    /// `p/q`, a decimal, or `seq:LITERAL` (finite greedy or infinite quasi-greedy).
    #[arg(long, allow_hyphen_values = true)]
    pub t: String,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub beta: BetaArg,
    #[arg(long, default_value = "0")]
    pub t_min: String,
    #[arg(long, default_value = "99/100")]
    pub t_max: String,
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct HolderArgs {
    #[command(flatten)]
    pub t: TArgs,
    /// `geometric:FIRST,COUNT` for FIRST·2^-j, j = 1..COUNT.
    #[arg(long, default_value = "geometric:1e-2,20")]
    pub offsets: String,
}
