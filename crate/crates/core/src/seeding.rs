//! Deterministic per-trial seed derivation.
//!
//! Trials hash `(master seed, trial index)` in counter mode instead of
//! splitting one RNG stream, so parallel execution order cannot change any
//! trial's randomness.

use sha2::{Digest, Sha256};

/// 32-byte seed for trial `index` under `master`.
pub fn trial_seed(master: u64, index: u64) -> [u8; 32] {
    let mut hasher = Sha256::new();
    hasher.update(master.to_le_bytes());
    hasher.update(index.to_le_bytes());
    hasher.finalize().into()
}
