use anyhow::{bail, Result};
use clap::Args;
use num_traits::ToPrimitive;
use serde_json::json;

use soficlab::expander::{
    build_graph, cheeger_exact, expander_condition_all, spectrum, ConditionOutcome, EXACT_LIMIT,
};
use soficlab::frac::{parse_frac, Frac};
use soficlab::Permutation;

use crate::harness::{run_trials, wall_report, TrialRecord};
use crate::output::{fmt_f64, fmt_frac, to_csv_string, to_json_string, Format, Sink};
use crate::GlobalOpts;

/// The 3.6 second-eigenvalue threshold the frequency summary reports on.
pub const EIGENVALUE_THRESHOLD: f64 = 3.6;

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum ExpanderMode {
    /// Spectral quantities only; any degree.
    Sample,
    /// Exact Cheeger constant and exhaustive condition check (n ≤ 20).
    Exact,
}

/// Sample random cycle pairs and record spectral gap and Cheeger data.
#[derive(Args, Debug)]
pub struct ExpanderArgs {
    #[arg(long)]
    n: usize,

    /// Expander constant for condition (1), as "p/q".
    #[arg(long, default_value = "1/5")]
    lambda: String,

    #[arg(long, value_enum, default_value_t = ExpanderMode::Sample)]
    mode: ExpanderMode,
}

#[derive(Clone, Debug)]
struct ExpanderTrial {
    lambda2: f64,
    max_abs_nontrivial: f64,
    /// Exact "p/q" in exact mode, 17-digit float rendering of the spectral
    /// bound otherwise.
    cheeger_or_bound: String,
    condition_holds: Option<bool>,
}

pub fn run(args: &ExpanderArgs, global: &GlobalOpts, sink: &Sink) -> Result<()> {
    let lambda: Frac = parse_frac(&args.lambda)?;
    if args.mode == ExpanderMode::Exact && args.n > EXACT_LIMIT {
        bail!("schema: exact mode needs n <= {EXACT_LIMIT}, got {}", args.n);
    }
    let n = args.n;
    let mode = args.mode;
    let records = run_trials(global.trials, global.jobs, global.seed, move |_t, rng| {
        let a = Permutation::random_cycle(n, rng).map_err(|e| e.to_string())?;
        let c = Permutation::random_cycle(n, rng).map_err(|e| e.to_string())?;
        let g = build_graph(&a, &c).map_err(|e| e.to_string())?;
        let s = spectrum(&g).map_err(|e| e.to_string())?;
        let (cheeger_or_bound, condition_holds) = match mode {
            ExpanderMode::Exact => {
                let h = cheeger_exact(&g).map_err(|e| e.to_string())?;
                let outcome = expander_condition_all(&g, lambda).map_err(|e| e.to_string())?;
                (fmt_frac(h.value), outcome.holds())
            }
            ExpanderMode::Sample => {
                let bound = s.cheeger_lower_bound();
                let holds = match expander_condition_all(&g, lambda) {
                    Ok(ConditionOutcome::HoldsExact)
                    | Ok(ConditionOutcome::HoldsSpectral { .. }) => Some(true),
                    Ok(ConditionOutcome::Violated { .. }) => Some(false),
                    Ok(ConditionOutcome::Inconclusive { .. }) => None,
                    Err(e) => return Err(e.to_string()),
                };
                (fmt_f64(bound), holds)
            }
        };
        Ok(ExpanderTrial {
            lambda2: s.lambda2(),
            max_abs_nontrivial: s.max_abs_nontrivial(),
            cheeger_or_bound,
            condition_holds,
        })
    })?;
    eprintln!("expander: {}", wall_report(&records));
    emit(&records, global, sink)
}

fn emit(records: &[TrialRecord<ExpanderTrial>], global: &GlobalOpts, sink: &Sink) -> Result<()> {
    let within = records
        .iter()
        .filter(|r| {
            r.payload
                .as_ref()
                .map(|p| p.max_abs_nontrivial <= EIGENVALUE_THRESHOLD)
                .unwrap_or(false)
        })
        .count();
    let total = records.len();
    let frequency = Frac::new(within as i64, total.max(1) as i64);
    let summary = json!({
        "trials": total,
        "threshold": fmt_f64(EIGENVALUE_THRESHOLD),
        "within_threshold": within,
        "frequency": fmt_frac(frequency),
        "frequency_float": fmt_f64(frequency.to_f64().unwrap_or(0.0)),
    });

    match global.format {
        Format::Csv => {
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| match &r.payload {
                    Ok(p) => vec![
                        r.trial.to_string(),
                        fmt_f64(p.lambda2),
                        p.cheeger_or_bound.clone(),
                        p.condition_holds
                            .map(|b| b.to_string())
                            .unwrap_or_else(|| "unknown".to_string()),
                    ],
                    Err(e) => vec![
                        r.trial.to_string(),
                        String::new(),
                        String::new(),
                        format!("error: {e}"),
                    ],
                })
                .collect();
            let csv =
                to_csv_string(&["trial", "lambda2", "cheeger_or_bound", "condition_holds"], &rows)?;
            sink.write_primary(&csv)?;
            sink.write_summary(&to_json_string(&summary))
        }
        Format::Json => {
            let rows: Vec<serde_json::Value> = records
                .iter()
                .map(|r| match &r.payload {
                    Ok(p) => json!({
                        "trial": r.trial,
                        "seed": crate::output::fmt_seed(&r.seed),
                        "lambda2": fmt_f64(p.lambda2),
                        "max_abs_nontrivial": fmt_f64(p.max_abs_nontrivial),
                        "cheeger_or_bound": p.cheeger_or_bound,
                        "condition_holds": p.condition_holds,
                    }),
                    Err(e) => json!({"trial": r.trial, "error": e}),
                })
                .collect();
            let doc = json!({"records": rows, "summary": summary});
            sink.write_primary(&to_json_string(&doc))
        }
    }
}
