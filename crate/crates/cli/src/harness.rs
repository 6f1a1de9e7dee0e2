//! Seeded parallel trial execution.
//!
//! Each trial draws its randomness from a ChaCha stream keyed by a
//! counter-mode hash of the master seed and the trial index, so the output
//! is a pure function of the manifest no matter how many workers run it.
//! Wall times are collected for the stderr report but never written into
//! result documents.

use std::time::{Duration, Instant};

use anyhow::Result;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use soficlab::seeding::trial_seed;

#[derive(Clone, Debug)]
pub struct TrialRecord<P> {
    pub trial: u64,
    pub seed: [u8; 32],
    pub payload: Result<P, String>,
    pub wall: Duration,
}

pub fn rng_for(master: u64, trial: u64) -> ChaCha12Rng {
    ChaCha12Rng::from_seed(trial_seed(master, trial))
}

/// Run `trials` independent trials on `jobs` workers (0 = all cores) and
/// return the records in trial order. Failed trials carry their error text;
/// the run continues.
pub fn run_trials<P, F>(
    trials: u64,
    jobs: usize,
    master_seed: u64,
    trial_fn: F,
) -> Result<Vec<TrialRecord<P>>>
where
    P: Send,
    F: Fn(u64, &mut ChaCha12Rng) -> Result<P, String> + Sync,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()?;
    let records = pool.install(|| {
        (0..trials)
            .into_par_iter()
            .map(|trial| {
                let seed = trial_seed(master_seed, trial);
                let mut rng = ChaCha12Rng::from_seed(seed);
                let start = Instant::now();
                let payload = trial_fn(trial, &mut rng);
                TrialRecord {
                    trial,
                    seed,
                    payload,
                    wall: start.elapsed(),
                }
            })
            .collect::<Vec<_>>()
    });
    Ok(records)
}

/// One-line wall-time report for stderr.
pub fn wall_report<P>(records: &[TrialRecord<P>]) -> String {
    let total: Duration = records.iter().map(|r| r.wall).sum();
    let failures = records.iter().filter(|r| r.payload.is_err()).count();
    format!(
        "{} trials, {} failed, {:.3}s total work",
        records.len(),
        failures,
        total.as_secs_f64()
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn trial_streams_do_not_depend_on_parallelism() {
        let draw = |_trial: u64, rng: &mut ChaCha12Rng| -> Result<u64, String> {
            Ok(rng.random())
        };
        let serial = run_trials(16, 1, 7, draw).unwrap();
        let parallel = run_trials(16, 4, 7, draw).unwrap();
        for (a, b) in serial.iter().zip(&parallel) {
            assert_eq!(a.trial, b.trial);
            assert_eq!(a.payload.as_ref().unwrap(), b.payload.as_ref().unwrap());
        }
    }

    #[test]
    fn zero_trials_is_empty() {
        let records =
            run_trials(0, 1, 1, |_, _| -> Result<(), String> { Ok(()) }).unwrap();
        assert!(records.is_empty());
    }

    #[test]
    fn failures_are_recorded_not_fatal() {
        let records = run_trials(4, 2, 1, |t, _| {
            if t % 2 == 0 {
                Ok(t)
            } else {
                Err("odd".to_string())
            }
        })
        .unwrap();
        assert_eq!(records.len(), 4);
        assert!(records[0].payload.is_ok());
        assert!(records[1].payload.is_err());
        assert!(wall_report(&records).contains("2 failed"));
    }
}
