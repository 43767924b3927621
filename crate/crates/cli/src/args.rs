use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "mbqc", version, about = "Measurement-based quantum computation with tilted measurement bases")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run or analyse a measurement pattern file.
    Pattern {
        #[command(subcommand)]
        command: PatternCmd,
    },
    /// Produce a data table over a parameter grid.
    Sweep {
        #[command(subcommand)]
        command: SweepCmd,
    },
    /// ZX-diagram tools.
    Zx {
        #[command(subcommand)]
        command: ZxCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum PatternCmd {
    /// Simulate the pattern on an input state.
    Run(RunArgs),
    /// Extract the Kraus operator of one outcome string and its entanglement.
    Extract(ExtractArgs),
}

#[derive(Subcommand, Debug)]
pub enum SweepCmd {
    /// Operator entanglement of the tilted 3-chain gate against the tilt.
    Sop(SopArgs),
    /// Ground-state weight under repeated tilted gates (imaginary time).
    Ite(IteArgs),
    /// Success probability of the monitor-and-correct protocol.
    Feedback(FeedbackArgs),
    /// Second Rényi operator entanglement: exact, SWAP test and randomized measurements.
    Estimator(EstimatorArgs),
}

#[derive(Subcommand, Debug)]
pub enum ZxCmd {
    /// Check two diagrams, a diagram and a gate, or a built-in identity for equality up to a scalar.
    Check(CheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    /// Whitespace-separated columns with `#` comments.
    Gnuplot,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Values for free variables in pattern and diagram files.
#[derive(Args, Debug, Clone, Default)]
pub struct VarArgs {
    /// Binds `eps`.
    #[arg(long, allow_hyphen_values = true)]
    pub epsilon: Option<String>,
    /// Binds `phi`.
    #[arg(long, allow_hyphen_values = true)]
    pub phi: Option<String>,
    /// Any other binding, `name=value`; repeatable.
    #[arg(long = "var", value_name = "NAME=VALUE")]
    pub vars: Vec<String>,
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Pattern file, or `builtin:<name>` for a bundled one.
    pub pattern: String,
    /// Input labels (0, 1, +, -, +i, -i), comma-separated, first label on the first input.
    #[arg(long)]
    pub input: Option<String>,
    /// Force these outcomes (one bit per measurement, in measurement order).
    #[arg(long)]
    pub postselect: Option<String>,
    /// Seed for sampled outcomes when not postselecting.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub vars: VarArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct ExtractArgs {
    /// Pattern file, or `builtin:<name>` for a bundled one.
    pub pattern: String,
    /// Outcome string (one bit per measurement); all zeros by default.
    #[arg(long, alias = "outcomes")]
    pub postselect: Option<String>,
    #[command(flatten)]
    pub vars: VarArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SweepOutput {
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug)]
pub struct SopArgs {
    /// Grid `start:stop[:count]` or a comma list.
    #[arg(long, default_value = "0:pi/2", allow_hyphen_values = true)]
    pub epsilon: String,
    /// Points for a `start:stop` grid.
    #[arg(long, default_value_t = 20)]
    pub steps: usize,
    #[command(flatten)]
    pub out: SweepOutput,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Byproducts {
    Postselect,
    Correct,
}

#[derive(Args, Debug)]
pub struct IteArgs {
    #[arg(long, default_value = "0.25", allow_hyphen_values = true)]
    pub epsilon: String,
    /// Rows for n = 0..=steps.
    #[arg(long, default_value_t = 8)]
    pub steps: usize,
    /// Treatment of X-basis outcomes in the chain.
    #[arg(long, value_enum, default_value_t = Byproducts::Postselect)]
    pub byproducts: Byproducts,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: SweepOutput,
}

#[derive(Args, Debug)]
pub struct FeedbackArgs {
    /// Grid `start:stop:count` or a comma list.
    #[arg(long, default_value = "0.05,0.1,0.2,0.3,0.5,0.8", allow_hyphen_values = true)]
    pub epsilon: String,
    #[arg(long, default_value = "pi/2", allow_hyphen_values = true)]
    pub beta: String,
    /// Attempts n = 1..=steps.
    #[arg(long, default_value_t = 8)]
    pub steps: usize,
    /// Monte Carlo trajectories per grid point (0 for analytic columns only).
    #[arg(long, default_value_t = 10_000)]
    pub shots: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: SweepOutput,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum EnsembleArg {
    Haar,
    Clifford1q,
}

#[derive(Args, Debug)]
pub struct EstimatorArgs {
    /// Grid `start:stop:count` or a comma list.
    #[arg(long, default_value = "0,0.3,0.6,0.9,1.2,1.5", allow_hyphen_values = true)]
    pub epsilon: String,
    /// Random unitaries per run (M).
    #[arg(long, default_value_t = 40)]
    pub unitaries: usize,
    /// Shots per unitary (K).
    #[arg(long, default_value_t = 500)]
    pub shots: u64,
    /// Shots for each SWAP-test run.
    #[arg(long, default_value_t = 20_000)]
    pub swap_shots: u64,
    #[arg(long, default_value_t = 10)]
    pub repeats: usize,
    #[arg(long, value_enum, default_value_t = EnsembleArg::Haar)]
    pub ensemble: EnsembleArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub out: SweepOutput,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GateArg {
    Fig1c,
    Fig1d,
    Fig1e,
    Xx,
    Byproduct,
    Identity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BuiltinArg {
    Teleport,
    Fig7,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    /// One or two diagram files.
    #[arg(num_args = 0..=2)]
    pub files: Vec<PathBuf>,
    /// Compare a single diagram with this gate.
    #[arg(long, value_enum, conflicts_with = "builtin")]
    pub gate: Option<GateArg>,
    /// Check a bundled diagram against its closed form.
    #[arg(long, value_enum)]
    pub builtin: Option<BuiltinArg>,
    /// Outcome bits for gates and diagrams that take them (binds `s1`).
    #[arg(long, default_value_t = 0)]
    pub s1: u8,
    /// Binds `s2`.
    #[arg(long, default_value_t = 0)]
    pub s2: u8,
    #[command(flatten)]
    pub vars: VarArgs,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(flatten)]
    pub output: OutputArgs,
}
