use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Subcommand};
use serde_json::json;

use soficlab::frac::parse_frac;
use soficlab::piece::DiagProjection;
use soficlab::sofic::{convex_combine, rep_distance_upper, FiniteSoficRep, RepFile, WordWeightScheme};

use crate::harness::rng_for;
use crate::output::{fmt_big, fmt_f64, fmt_frac, to_json_string, Sink};
use crate::GlobalOpts;

/// Finite sofic representations: defects, sums, cuts and distances.
#[derive(Args, Debug)]
pub struct RepArgs {
    #[command(subcommand)]
    command: RepCmd,
}

#[derive(Subcommand, Debug)]
enum RepCmd {
    /// Trace defect over nontrivial words up to length L.
    Defect {
        #[arg(long)]
        rep_file: PathBuf,
        #[arg(long, alias = "L", default_value_t = 4)]
        l: usize,
    },
    /// Weighted direct sum with rational weight λ.
    Combine {
        #[arg(long)]
        rep1: PathBuf,
        #[arg(long)]
        rep2: PathBuf,
        /// Weight "p/q" in [0, 1].
        #[arg(long)]
        lambda: String,
    },
    /// Cut by an invariant set listed in a file of indices.
    Cut {
        #[arg(long)]
        rep_file: PathBuf,
        #[arg(long)]
        set_file: PathBuf,
    },
    /// Upper bound on the word metric via conjugacy search.
    Distance {
        #[arg(long)]
        rep1: PathBuf,
        #[arg(long)]
        rep2: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        /// Word length cutoff of the weight scheme.
        #[arg(long, alias = "L", default_value_t = 3)]
        l: usize,
    },
}

fn read_rep(path: &Path) -> Result<FiniteSoficRep> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: RepFile = serde_json::from_str(&text)
        .with_context(|| format!("parsing {}", path.display()))?;
    Ok(file.into_rep()?)
}

pub fn run(args: &RepArgs, global: &GlobalOpts, sink: &Sink) -> Result<()> {
    match &args.command {
        RepCmd::Defect { rep_file, l } => {
            let rep = read_rep(rep_file)?;
            let defect = rep.trace_defect(*l)?;
            let doc = json!({
                "degree": rep.degree(),
                "generators": rep.generators(),
                "l": l,
                "defect": fmt_frac(defect),
            });
            sink.write_primary(&to_json_string(&doc))
        }
        RepCmd::Combine { rep1, rep2, lambda } => {
            let lambda = parse_frac(lambda)?;
            let combined = convex_combine(&read_rep(rep1)?, &read_rep(rep2)?, lambda)?;
            let doc = json!({
                "rep": RepFile::from_rep(&combined.rep),
                "first_block": combined.first_block.indices().collect::<Vec<_>>(),
                "first_block_trace": fmt_frac(combined.first_block.trace()),
                "lambda": fmt_frac(lambda),
            });
            sink.write_primary(&to_json_string(&doc))
        }
        RepCmd::Cut { rep_file, set_file } => {
            let rep = read_rep(rep_file)?;
            let text = fs::read_to_string(set_file)
                .with_context(|| format!("reading {}", set_file.display()))?;
            let indices: Vec<usize> = text
                .split_whitespace()
                .map(|t| t.parse::<usize>().context("set file holds indices"))
                .collect::<Result<_>>()?;
            let p = DiagProjection::from_indices(rep.degree(), indices)?;
            let cut = rep.cut(&p)?;
            sink.write_primary(&to_json_string(&json!(RepFile::from_rep(&cut))))
        }
        RepCmd::Distance {
            rep1,
            rep2,
            budget,
            l,
        } => {
            let left = read_rep(rep1)?;
            let right = read_rep(rep2)?;
            let scheme = WordWeightScheme::shortlex(left.generators().len(), *l);
            let mut rng = rng_for(global.seed, 0);
            let bound = rep_distance_upper(&left, &right, &scheme, *budget, &mut rng)?;
            let doc = json!({
                "squared": fmt_big(&bound.squared),
                "value": fmt_f64(bound.value()),
                "tail_bound_squared": fmt_big(&bound.tail_bound_squared),
                "conjugator": bound.conjugator.to_string(),
                "evaluations": bound.evaluations,
                "words": scheme.words().len(),
            });
            sink.write_primary(&to_json_string(&doc))
        }
    }
}
