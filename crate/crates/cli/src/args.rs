use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(name = "cosetsle", version, about = "Coset null-vector constraints and SLE martingale checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify every field of a coset model at a level.
    Classify(ClassifyArgs),
    /// Constraint rows and admissibility for one field.
    Solve(SolveArgs),
    /// Monte-Carlo simulation and martingale tests.
    #[command(subcommand)]
    Sim(SimCommand),
    /// Compare engine rows against the literal closed forms.
    Audit(AuditArgs),
    /// Re-run a command from its manifest and compare output digests.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum ModeArg {
    Semidirect,
    #[value(alias = "sugawara-coset")]
    Sugawara,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum NormArg {
    Orthonormal,
    FormDifference,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum RepresentativeArg {
    All,
    Canonical,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the artifact here (a manifest is written next to it).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Explicit manifest path.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[arg(long, default_value = "su2_u1")]
    pub model: String,
    #[arg(long)]
    pub level: i64,
    #[arg(long, value_enum, default_value = "semidirect")]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value = "orthonormal")]
    pub normalization: NormArg,
    /// One table row per orbit member instead of per orbit.
    #[arg(long)]
    pub all_representatives: bool,
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, default_value = "su2_u1")]
    pub model: String,
    #[arg(long)]
    pub level: i64,
    /// `MU,NU`.
    #[arg(long)]
    pub field: String,
    /// Literal closed-form rows under both c-sign conventions (default).
    #[arg(long, conflicts_with = "engine")]
    pub closed_form: bool,
    /// Rows derived by the operator engine.
    #[arg(long)]
    pub engine: bool,
    #[arg(long, value_enum)]
    pub representative: Option<RepresentativeArg>,
    #[arg(long, value_enum, default_value = "semidirect")]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value = "orthonormal")]
    pub normalization: NormArg,
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct AuditArgs {
    #[arg(long, default_value = "su2_u1")]
    pub model: String,
    /// One or more levels, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "1,2,3")]
    pub level: Vec<i64>,
    #[arg(long)]
    pub json: bool,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    pub manifest: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum LoewnerArg {
    Euler,
    Slit,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
pub enum GroupArg {
    ItoLinear,
    ItoDrift,
    Exponential,
}

/// Overrides applied on top of `--config` and the defaults.
#[derive(Debug, Args, Clone)]
pub struct SimFlags {
    /// TOML file with SimConfig fields.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, allow_negative_numbers = true)]
    pub kappa: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub tau: Option<f64>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long = "T", alias = "t-max")]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub samples: Option<usize>,
    #[arg(long, env = "COSETSLE_SEED")]
    pub seed: Option<u64>,
    #[arg(long)]
    pub checkpoints: Option<usize>,
    #[arg(long, value_enum)]
    pub loewner: Option<LoewnerArg>,
    #[arg(long, value_enum)]
    pub group: Option<GroupArg>,
}

#[derive(Debug, Subcommand)]
pub enum SimCommand {
    /// Sample a trace; CSV `t,re,im`.
    Trace {
        #[command(flatten)]
        sim: SimFlags,
        #[command(flatten)]
        output: Output,
    },
    /// `(w')^h w^p` started at `i`.
    Martingale {
        #[command(flatten)]
        sim: SimFlags,
        #[arg(long, allow_negative_numbers = true)]
        h: f64,
        #[arg(long, allow_negative_numbers = true)]
        p: f64,
        /// Run even if the indicial relation fails.
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        output: Output,
    },
    /// One-point observable of a coset field with its group factor.
    CosetMartingale {
        #[command(flatten)]
        sim: SimFlags,
        #[arg(long, default_value = "su2_u1")]
        model: String,
        #[arg(long)]
        level: i64,
        /// `MU,NU`.
        #[arg(long)]
        field: String,
        /// Exponent; solved from the indicial relation when absent.
        #[arg(long, allow_negative_numbers = true)]
        p: Option<f64>,
        #[arg(long)]
        force: bool,
        #[command(flatten)]
        output: Output,
    },
    /// Group walk mean against the matrix exponential.
    GeneratorCheck {
        #[command(flatten)]
        sim: SimFlags,
        #[arg(long, default_value = "su2_u1")]
        model: String,
        /// Dynkin label(s) of the irrep, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1")]
        weight: Vec<i64>,
        /// Basis vector the walk starts from.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[command(flatten)]
        output: Output,
    },
}
