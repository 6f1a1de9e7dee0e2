use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Args;
use num_traits::ToPrimitive;
use serde_json::json;

use soficlab::expander::{build_graph, cheeger_exact, spectrum, EXACT_LIMIT};
use soficlab::frac::{parse_frac, Frac};
use soficlab::intertwiner::{extract, perturb_involution, planted_instance, ExtractionReport};
use soficlab::Permutation;

use crate::harness::{run_trials, wall_report};
use crate::output::{fmt_big, fmt_frac, to_json_string, Sink};
use crate::GlobalOpts;

/// Run the intertwiner extraction on given files or on constructed planted
/// instances.
#[derive(Args, Debug)]
pub struct ExtractArgs {
    #[arg(long, requires = "z_file", requires = "y_file", conflicts_with = "construct")]
    x_file: Option<PathBuf>,

    #[arg(long)]
    z_file: Option<PathBuf>,

    #[arg(long)]
    y_file: Option<PathBuf>,

    /// Build planted swap-amplified instances instead of reading files.
    #[arg(long, conflicts_with = "x_file")]
    construct: bool,

    /// Degree for --construct.
    #[arg(long, default_value_t = 24)]
    n: usize,

    /// Expander constant "p/q"; derived from the cycle-pair graph when
    /// omitted (exact Cheeger up to degree 20, spectral bound beyond).
    #[arg(long)]
    lambda: Option<String>,

    /// Number of involution-preserving transpositions to apply to y.
    #[arg(long, default_value_t = 0)]
    perturb: usize,
}

/// An expander constant for the pair `(x, z)`, capped at 1: the exact
/// Cheeger constant when enumeration is feasible, otherwise a rational just
/// below the certified spectral lower bound.
pub fn derive_lambda(x: &Permutation, z: &Permutation) -> Result<Frac> {
    let g = build_graph(x, z)?;
    if x.degree() <= EXACT_LIMIT {
        let h = cheeger_exact(&g)?.value;
        Ok(h.min(Frac::new(1, 1)))
    } else {
        let bound = spectrum(&g)?.cheeger_lower_bound();
        let scaled = (bound * 1e6).floor() as i64;
        if scaled <= 0 {
            bail!("spectral bound {bound} gives no usable lambda");
        }
        Ok(Frac::new(scaled, 1_000_000).min(Frac::new(1, 1)))
    }
}

fn report_json(report: &ExtractionReport) -> serde_json::Value {
    json!({
        "epsilon": fmt_frac(report.epsilon),
        "lambda": fmt_frac(report.lambda),
        "selected_row": report.selected_row,
        "row_sums": report.row_sums.iter().map(|s| fmt_frac(*s)).collect::<Vec<_>>(),
        "sums_within_bound": report.sums_within_bound,
        "piece_traces": report.piece_traces.iter().map(|s| fmt_frac(*s)).collect::<Vec<_>>(),
        "selected_piece": report.selected_piece,
        "witness": report.witness.as_ref().map(|w| w.to_string()),
        "achieved_wx_zw": report.achieved_wx_zw.map(fmt_frac),
        "achieved_xw_wz": report.achieved_xw_wz.map(fmt_frac),
        "certified_bound": fmt_big(&report.certified_bound),
        "succeeded": report.succeeded,
    })
}

pub fn run(args: &ExtractArgs, global: &GlobalOpts, sink: &Sink) -> Result<()> {
    if args.construct {
        return run_constructed(args, global, sink);
    }
    let (Some(x_path), Some(z_path), Some(y_path)) = (&args.x_file, &args.z_file, &args.y_file)
    else {
        bail!("schema: provide --x-file/--z-file/--y-file or --construct");
    };
    let read = |p: &PathBuf| -> Result<Permutation> {
        let text =
            fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
        Ok(text.parse()?)
    };
    let x = read(x_path)?;
    let z = read(z_path)?;
    let y = read(y_path)?;
    let lambda = match &args.lambda {
        Some(s) => parse_frac(s)?,
        None => derive_lambda(&x, &z)?,
    };
    let report = extract(&x, &z, &y, lambda)?;
    sink.write_primary(&to_json_string(&report_json(&report)))
}

fn run_constructed(args: &ExtractArgs, global: &GlobalOpts, sink: &Sink) -> Result<()> {
    let n = args.n;
    let perturb = args.perturb;
    let lambda_flag = args
        .lambda
        .as_ref()
        .map(|s| parse_frac(s))
        .transpose()?;
    let records = run_trials(global.trials, global.jobs, global.seed, move |_t, rng| {
        let inst = planted_instance(n, rng).map_err(|e| e.to_string())?;
        let y = perturb_involution(&inst.y, perturb, rng).map_err(|e| e.to_string())?;
        let lambda = match lambda_flag {
            Some(l) => l,
            None => derive_lambda(&inst.x, &inst.z).map_err(|e| e.to_string())?,
        };
        extract(&inst.x, &inst.z, &y, lambda).map_err(|e| e.to_string())
    })?;
    eprintln!("extract: {}", wall_report(&records));

    let succeeded = records
        .iter()
        .filter(|r| r.payload.as_ref().map(|p| p.succeeded).unwrap_or(false))
        .count();
    let certified = records
        .iter()
        .filter(|r| {
            r.payload
                .as_ref()
                .map(|p| p.succeeded && p.certificate_ok())
                .unwrap_or(false)
        })
        .count();
    let mean_epsilon: f64 = {
        let eps: Vec<f64> = records
            .iter()
            .filter_map(|r| r.payload.as_ref().ok())
            .filter_map(|p| p.epsilon.to_f64())
            .collect();
        if eps.is_empty() {
            0.0
        } else {
            eps.iter().sum::<f64>() / eps.len() as f64
        }
    };
    let rows: Vec<serde_json::Value> = records
        .iter()
        .map(|r| match &r.payload {
            Ok(p) => {
                let mut row = report_json(p);
                row["trial"] = json!(r.trial);
                row["seed"] = json!(crate::output::fmt_seed(&r.seed));
                row
            }
            Err(e) => json!({"trial": r.trial, "error": e}),
        })
        .collect();
    let doc = json!({
        "records": rows,
        "summary": {
            "trials": records.len(),
            "succeeded": succeeded,
            "certified": certified,
            "mean_epsilon": crate::output::fmt_f64(mean_epsilon),
        },
    });
    sink.write_primary(&to_json_string(&doc))
}
