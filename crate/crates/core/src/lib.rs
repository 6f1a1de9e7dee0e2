//! Finite-scale models of sofic approximations: exact permutation
//! combinatorics with Hamming metrics, square-root counting in symmetric
//! groups, almost-commuting enumeration, expander diagnostics on cycle-pair
//! graphs, certified intertwiner extraction, exact-rational interval
//! translations and finite sofic representations.
//!
//! Everything that certifies a claim is exact rational or big-integer
//! arithmetic; floating point appears only in eigensolves and is kept behind
//! explicit tolerances.

pub mod almost_commute;
pub mod error;
pub mod expander;
pub mod frac;
pub mod intertwiner;
pub mod interval;
pub mod perm;
pub mod piece;
pub mod seeding;
pub mod sofic;
pub mod sqrt_count;

pub use error::{Error, Result};
pub use frac::Frac;
pub use perm::Permutation;
pub use piece::{hamming_rows, DiagProjection, PartialPermutation};
