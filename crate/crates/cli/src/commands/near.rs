use anyhow::{bail, Result};
use clap::Args;
use serde_json::json;

use soficlab::almost_commute::{bcyc_enumerate, count_bound, enumerate_near_commuting};
use soficlab::frac::{parse_frac, Frac};

use crate::output::{fmt_frac, to_json_string, Sink};

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum NearMode {
    /// Enumerate the segment construction only.
    Construct,
    /// Exhaustive ball versus construction.
    Exhaustive,
    /// The Bcyc set of conjugated cycles.
    Bcyc,
}

/// Enumerate permutations almost commuting with the canonical cycle.
#[derive(Args, Debug)]
pub struct NearArgs {
    #[arg(long)]
    n: usize,

    /// Segment budget; the ball radius is (k-1)/n.
    #[arg(long)]
    k: Option<usize>,

    /// Strict threshold for the bcyc mode, as "p/q".
    #[arg(long, conflicts_with = "k")]
    epsilon: Option<String>,

    #[arg(long, value_enum)]
    mode: NearMode,

    /// Include the full witness lists in the output.
    #[arg(long)]
    witnesses: bool,
}

pub fn run(args: &NearArgs, sink: &Sink) -> Result<()> {
    let doc = match args.mode {
        NearMode::Bcyc => {
            let Some(eps) = &args.epsilon else {
                bail!("schema: --mode bcyc needs --epsilon");
            };
            let epsilon: Frac = parse_frac(eps)?;
            let res = bcyc_enumerate(args.n, epsilon)?;
            let mut doc = json!({
                "mode": "bcyc",
                "n": args.n,
                "epsilon": fmt_frac(epsilon),
                "bcyc_count": res.set.len(),
                "cycles_total": res.cycles_total.to_string(),
                "below_asymptotic_bound": res.below_asymptotic_bound(),
            });
            if args.witnesses {
                doc["witnesses"] = res
                    .witnesses
                    .iter()
                    .map(|(c, w)| json!({"cycle": c.to_string(), "witness": w.to_string()}))
                    .collect();
            }
            doc
        }
        NearMode::Construct | NearMode::Exhaustive => {
            let Some(k) = args.k else {
                bail!("schema: --mode {:?} needs --k", args.mode);
            };
            let res = enumerate_near_commuting(args.n, k)?;
            let eps = Frac::new(k as i64 - 1, args.n as i64);
            let bound = count_bound(args.n, eps)?;
            let mut doc = json!({
                "mode": match args.mode {
                    NearMode::Construct => "construct",
                    _ => "exhaustive",
                },
                "n": args.n,
                "k": k,
                "constructed_count": res.constructed.len(),
            });
            if args.mode == NearMode::Exhaustive {
                doc["ball_count"] = json!(res.ball.len());
                doc["ball_radius"] = json!(fmt_frac(eps));
                doc["count_bound"] = json!(bound.to_string());
                doc["ball_covered_by_construction"] = json!(res.ball_covered());
                doc["sets_equal"] = json!(res.sets_equal());
                doc["missing_count"] = json!(res.missing_from_construction().len());
            }
            if args.witnesses {
                let list: Vec<String> = if args.mode == NearMode::Exhaustive {
                    res.ball.iter().map(|p| p.to_string()).collect()
                } else {
                    res.constructed.iter().map(|p| p.to_string()).collect()
                };
                doc["witnesses"] = json!(list);
            }
            doc
        }
    };
    sink.write_primary(&to_json_string(&doc))
}
