use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use serde_json::json;

use soficlab::sqrt_count::{cycle_type, sqrt_count_exact, CycleType};
use soficlab::Permutation;

use crate::output::{to_json_string, Sink};

/// Count square roots in Sym(n) for a permutation or a cycle type.
#[derive(Args, Debug)]
pub struct SqrtArgs {
    /// File holding one permutation line, e.g. "1 2 0".
    #[arg(long, conflicts_with = "cycle_type", required_unless_present = "cycle_type")]
    perm_file: Option<PathBuf>,

    /// Cycle type spec such as "2^2 3^1".
    #[arg(long = "type", required_unless_present = "perm_file")]
    cycle_type: Option<String>,
}

pub fn run(args: &SqrtArgs, sink: &Sink) -> Result<()> {
    let ty: CycleType = match (&args.perm_file, &args.cycle_type) {
        (Some(path), _) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let perm: Permutation = text.parse()?;
            cycle_type(&perm)
        }
        (None, Some(spec)) => spec.parse()?,
        (None, None) => unreachable!("clap enforces one input"),
    };
    let count = sqrt_count_exact(&ty);
    let doc = json!({
        "type": ty.to_string(),
        "degree": ty.degree(),
        "count": count.to_string(),
    });
    sink.write_primary(&to_json_string(&doc))
}
