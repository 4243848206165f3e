use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "occ", version, about = "Online coded caching simulator and bound calculators")]
#[command(args_override_self = true)]
pub struct Cli {
    /// Read `key=value` lines as flags. Flags given on the command line win.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run policies over many trials and write per-slot statistics as CSV.
    Simulate(SimulateArgs),
    /// Print closed-form rate, regret and switching bounds for an instance.
    Bounds(BoundsArgs),
    /// Evaluate the regret lower bound for a two-instance construction.
    Lowerbound(LowerboundArgs),
    /// Fuzz the delivery scheme and check that every user decodes.
    VerifyDecode(VerifyDecodeArgs),
    /// Convert `file_id,count` rows into a ranked popularity CSV.
    Ingest(IngestArgs),
}

#[derive(Debug, Args)]
pub struct InstanceArgs {
    /// Number of files. Optional when the distribution fixes it.
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of users.
    #[arg(long)]
    pub k: usize,
    /// Cache size in files.
    #[arg(long)]
    pub m: f64,
    /// Popularity: `zipf:S`, `probs:P1,P2,..`, `counts:PATH` or `lbpair:A,B`.
    #[arg(long, default_value = "zipf:1")]
    pub dist: String,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Subpackets per file.
    #[arg(long, default_value_t = occ_core::model::DEFAULT_SUBPACKETS)]
    pub f: usize,
    /// Comma-separated: tracking, oracle, uniform, lfu.
    #[arg(long, default_value = "tracking,uniform,lfu")]
    pub policies: String,
    #[arg(long, default_value_t = 1000)]
    pub horizon: u64,
    #[arg(long, default_value_t = 100)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// `bit` or `analytic`. Defaults to `bit` when K fits under the subset
    /// cap and `analytic` otherwise.
    #[arg(long)]
    pub rate_mode: Option<String>,
    /// Regret reference: `upper` (closed-form oracle rate bound) or `paired`.
    #[arg(long, default_value = "upper")]
    pub ko: String,
    /// LFU miss charge: `broadcast` or `per-request`.
    #[arg(long, default_value = "broadcast")]
    pub lfu_accounting: String,
    /// Largest number of coded users handled by exact delivery.
    #[arg(long, default_value_t = occ_core::engine::DEFAULT_SUBSET_CAP)]
    pub cap: usize,
    /// Output CSV path; stdout when omitted or `-`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[command(flatten)]
    pub instance: InstanceArgs,
    /// Oracle rate used in the regret constants: `upper`, `lb` or a number.
    #[arg(long, default_value = "upper")]
    pub ko: String,
    /// `text` or `csv`.
    #[arg(long, default_value = "text")]
    pub format: String,
}

#[derive(Debug, Args)]
pub struct LowerboundArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub m: f64,
    #[arg(long)]
    pub a: f64,
    #[arg(long)]
    pub b: f64,
    /// Also enumerate every subset and check the rate gap.
    #[arg(long)]
    pub verify: bool,
}

#[derive(Debug, Args)]
pub struct VerifyDecodeArgs {
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Flip one cached bit that a user relies on, to check the checker.
    #[arg(long)]
    pub corrupt: bool,
    #[arg(long, default_value_t = 6)]
    pub max_files: usize,
    #[arg(long, default_value_t = 5)]
    pub max_users: usize,
    #[arg(long, default_value_t = 3.0)]
    pub max_cache: f64,
    #[arg(long, default_value_t = 64)]
    pub max_subpackets: usize,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// CSV of `file_id,count` rows, header optional.
    #[arg(long)]
    pub input: PathBuf,
    /// Output path; stdout when omitted or `-`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}
