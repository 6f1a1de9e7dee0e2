//! Command-line front end: seeded, reproducible experiments over the
//! library with JSON/CSV outputs.
//!
//! Exit codes: 0 success, 2 schema/usage error, 1 runtime failure.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use soficlab_cli::output::Sink;
use soficlab_cli::{commands, GlobalOpts};

#[derive(Parser, Debug)]
#[command(name = "soficlab", version, about = "Finite sofic approximation experiments")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count square roots in the symmetric group.
    SqrtCount(commands::sqrt::SqrtArgs),
    /// Almost-commuting enumeration around the canonical cycle.
    NearCommute(commands::near::NearArgs),
    /// Cycle-pair graph spectra and Cheeger certificates.
    Expander(commands::expander::ExpanderArgs),
    /// Certified intertwiner extraction.
    Extract(commands::extract::ExtractArgs),
    /// Interval translation maps of the full group.
    Fullgroup(commands::fullgroup::FullgroupArgs),
    /// Finite sofic representations.
    Rep(commands::rep::RepArgs),
}

fn main() -> ExitCode {
    // clap itself exits with 2 on usage errors.
    let cli = Cli::parse();
    let sink = Sink::new(cli.global.out.clone());
    let result = match &cli.command {
        Command::SqrtCount(args) => commands::sqrt::run(args, &sink),
        Command::NearCommute(args) => commands::near::run(args, &sink),
        Command::Expander(args) => commands::expander::run(args, &cli.global, &sink),
        Command::Extract(args) => commands::extract::run(args, &cli.global, &sink),
        Command::Fullgroup(args) => commands::fullgroup::run(args, &sink),
        Command::Rep(args) => commands::rep::run(args, &cli.global, &sink),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            // Validation problems we detect ourselves are schema errors.
            if err.to_string().starts_with("schema:") {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
