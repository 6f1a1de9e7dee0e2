//! Deterministic serialization helpers.
//!
//! Exact rationals always go out as "p/q" strings, never as floats; floats
//! are rendered with 17 significant digits so re-runs are byte-identical.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use num_rational::BigRational;
use serde_json::Value;

use soficlab::frac::Frac;

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn fmt_frac(x: Frac) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn fmt_big(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn fmt_seed(seed: &[u8; 32]) -> String {
    seed.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Where rendered documents go: a file when `--out` is given, stdout
/// otherwise. Secondary documents (summaries) take a derived path or stderr.
pub struct Sink {
    out: Option<PathBuf>,
}

impl Sink {
    pub fn new(out: Option<PathBuf>) -> Sink {
        Sink { out }
    }

    pub fn write_primary(&self, content: &str) -> Result<()> {
        match &self.out {
            Some(path) => fs::write(path, content)
                .with_context(|| format!("writing {}", path.display())),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(content.as_bytes())?;
                Ok(())
            }
        }
    }

    pub fn write_summary(&self, content: &str) -> Result<()> {
        match &self.out {
            Some(path) => {
                let summary_path = summary_path(path);
                fs::write(&summary_path, content)
                    .with_context(|| format!("writing {}", summary_path.display()))
            }
            None => {
                eprintln!("{content}");
                Ok(())
            }
        }
    }
}

pub fn summary_path(primary: &Path) -> PathBuf {
    let mut name = primary.file_name().unwrap_or_default().to_os_string();
    name.push(".summary.json");
    primary.with_file_name(name)
}

pub fn to_json_string(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Render records as CSV with a fixed header.
pub fn to_csv_string(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header)?;
    for row in rows {
        writer.write_record(row)?;
    }
    let bytes = writer.into_inner().context("flushing csv")?;
    String::from_utf8(bytes).context("csv is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_stable() {
        assert_eq!(fmt_f64(3.6), "3.6000000000000001e0");
        assert_eq!(fmt_f64(0.0), "0.0000000000000000e0");
    }

    #[test]
    fn rationals_never_become_floats() {
        assert_eq!(fmt_frac(Frac::new(1, 3)), "1/3");
        assert_eq!(fmt_frac(Frac::new(2, 6)), "1/3");
        assert_eq!(fmt_frac(Frac::new(4, 1)), "4/1");
    }

    #[test]
    fn summary_path_suffix() {
        assert_eq!(
            summary_path(Path::new("runs/out.csv")),
            PathBuf::from("runs/out.csv.summary.json")
        );
    }
}
