//! Library side of the CLI: subcommand implementations, the seeded trial
//! harness and the deterministic output layer. The binary in `main.rs` is a
//! thin argument-parsing wrapper.

pub mod commands;
pub mod harness;
pub mod output;

use std::path::PathBuf;

use output::Format;

#[derive(clap::Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Master seed; per-trial seeds are derived by a counter-mode hash.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Number of trials for sampling subcommands.
    #[arg(long, global = true, default_value_t = 1)]
    pub trials: u64,

    /// Worker threads (0 = all cores). Output does not depend on this.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,

    /// Write the primary document here instead of stdout; summaries go to
    /// `<out>.summary.json`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}
