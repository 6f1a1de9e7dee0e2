use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Subcommand};
use num_rational::BigRational;
use serde_json::json;

use soficlab::frac::parse_big;
use soficlab::interval::{approximate, approximate_on_grid, IntervalTranslationMap};

use crate::output::{fmt_big, to_json_string, Sink};

/// Exact-rational interval translation maps.
#[derive(Args, Debug)]
pub struct FullgroupArgs {
    #[command(subcommand)]
    command: FullgroupCmd,
}

#[derive(Subcommand, Debug)]
enum FullgroupCmd {
    /// Approximate a map by a grid permutation within 2ε.
    Approx {
        #[arg(long)]
        map_file: PathBuf,
        /// Mass tolerance "p/q" in (0, 1).
        #[arg(long)]
        epsilon: String,
        /// Force a coarse grid instead of the exact lcm grid.
        #[arg(long)]
        grid: Option<usize>,
    },
    /// Compose two maps (left ∘ right) and print the result.
    Compose {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Exact Hamming distance between two maps.
    Distance {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
}

fn read_map(path: &Path) -> Result<IntervalTranslationMap> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(text.parse()?)
}

pub fn run(args: &FullgroupArgs, sink: &Sink) -> Result<()> {
    match &args.command {
        FullgroupCmd::Approx {
            map_file,
            epsilon,
            grid,
        } => {
            let phi = read_map(map_file)?;
            let eps: BigRational = parse_big(epsilon)?;
            let res = match grid {
                Some(n) => approximate_on_grid(&phi, *n, &eps)?,
                None => approximate(&phi, &eps)?,
            };
            let two_eps = BigRational::from_integer(2.into()) * &eps;
            let doc = json!({
                "n": res.n,
                "perm": res.perm.to_string(),
                "achieved": fmt_big(&res.achieved),
                "epsilon": fmt_big(&eps),
                "within_2eps": res.achieved < two_eps,
            });
            sink.write_primary(&to_json_string(&doc))
        }
        FullgroupCmd::Compose { left, right } => {
            let composed = read_map(left)?.compose(&read_map(right)?);
            sink.write_primary(&composed.to_string())
        }
        FullgroupCmd::Distance { left, right } => {
            let d = read_map(left)?.hamming(&read_map(right)?);
            let doc = json!({ "distance": fmt_big(&d) });
            sink.write_primary(&to_json_string(&doc))
        }
    }
}
