//! Permutations almost commuting with the canonical n-cycle.
//!
//! Cutting `{0, …, n-1}` into consecutive segments and rigidly rearranging
//! them produces permutations `y` with `d_H(ay, ya) ≤ (#segments)/n`, where
//! `a` is the canonical cycle. This module builds such permutations,
//! exhaustively enumerates small Hamming balls around exact commutation, and
//! evaluates the `n^(⌊εn⌋+1)` counting bound and the `Bcyc` sets.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::perm::{all_permutations, Permutation};

/// Cut points and a rearrangement for the segment construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SegmentSpec {
    degree: usize,
    /// Segment start points `0 = b₀ < b₁ < … < b_{k-1} < n`.
    starts: Vec<usize>,
    /// Where each segment goes: segment `j` is placed in slot `r(j)`.
    arrangement: Permutation,
}

impl SegmentSpec {
    pub fn new(degree: usize, starts: Vec<usize>, arrangement: Permutation) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidSegmentSpec("degree must be positive".into()));
        }
        if starts.first() != Some(&0) {
            return Err(Error::InvalidSegmentSpec(
                "first segment must start at 0".into(),
            ));
        }
        if !starts.windows(2).all(|w| w[0] < w[1]) || *starts.last().unwrap() >= degree {
            return Err(Error::InvalidSegmentSpec(
                "segment starts must be strictly increasing and below the degree".into(),
            ));
        }
        if arrangement.degree() != starts.len() {
            return Err(Error::InvalidSegmentSpec(format!(
                "arrangement degree {} does not match {} segments",
                arrangement.degree(),
                starts.len()
            )));
        }
        Ok(SegmentSpec {
            degree,
            starts,
            arrangement,
        })
    }

    pub fn segments(&self) -> usize {
        self.starts.len()
    }

    fn lengths(&self) -> Vec<usize> {
        let k = self.starts.len();
        (0..k)
            .map(|j| {
                let end = if j + 1 < k {
                    self.starts[j + 1]
                } else {
                    self.degree
                };
                end - self.starts[j]
            })
            .collect()
    }
}

/// Rigidly translate each segment to its slot: segment `j` starts at the sum
/// of the lengths of the segments placed in earlier slots.
pub fn build_segment_permutation(spec: &SegmentSpec) -> Permutation {
    let k = spec.segments();
    let lengths = spec.lengths();
    let seg_in_slot = spec.arrangement.inverse();
    let mut new_start = vec![0; k];
    let mut offset = 0;
    for slot in 0..k {
        let seg = seg_in_slot.apply(slot);
        new_start[seg] = offset;
        offset += lengths[seg];
    }
    let mut images = vec![0; spec.degree];
    for j in 0..k {
        for off in 0..lengths[j] {
            images[spec.starts[j] + off] = new_start[j] + off;
        }
    }
    Permutation::from_images(images).expect("segment layout is a bijection")
}

/// `n^(⌊εn⌋ + 1)`, the counting bound for the almost-commuting ball.
pub fn count_bound(n: usize, epsilon: Frac) -> Result<BigUint> {
    if epsilon < Frac::new(0, 1) || epsilon > Frac::new(1, 1) {
        return Err(Error::LambdaOutOfRange {
            value: epsilon.to_string(),
        });
    }
    let floor = (epsilon * Frac::new(n as i64, 1)).floor();
    let exponent = floor
        .to_integer()
        .to_u32()
        .expect("exponent fits in u32 for tested degrees");
    Ok(BigUint::from(n).pow(exponent + 1))
}

/// Result of comparing the exhaustive almost-commuting ball with the segment
/// construction.
#[derive(Clone, Debug)]
pub struct NearCommuting {
    pub n: usize,
    pub k: usize,
    /// `{y : d_H(ay, ya) ≤ (k-1)/n}`, by exhaustive search.
    pub ball: BTreeSet<Permutation>,
    /// Everything produced by segment specs with at most `k` segments.
    pub constructed: BTreeSet<Permutation>,
}

impl NearCommuting {
    /// Elements of the ball the construction misses. The completeness claim
    /// says this is empty; with a single segment the centraliser `⟨a⟩` is a
    /// genuine counterexample, so callers inspect rather than assume.
    pub fn missing_from_construction(&self) -> Vec<Permutation> {
        self.ball.difference(&self.constructed).cloned().collect()
    }

    pub fn ball_covered(&self) -> bool {
        self.ball.is_subset(&self.constructed)
    }

    pub fn sets_equal(&self) -> bool {
        self.ball == self.constructed
    }
}

/// Enumerate all segment permutations with at most `k` segments.
pub fn enumerate_constructed(n: usize, k: usize) -> Result<BTreeSet<Permutation>> {
    if k == 0 || k > n {
        return Err(Error::InvalidSegmentSpec(format!(
            "segment count {k} out of range for degree {n}"
        )));
    }
    let mut out = BTreeSet::new();
    for m in 1..=k {
        for interior in (1..n).combinations(m - 1) {
            let mut starts = vec![0];
            starts.extend(interior);
            for r in all_permutations(m)? {
                let spec = SegmentSpec::new(n, starts.clone(), r)?;
                out.insert(build_segment_permutation(&spec));
            }
        }
    }
    Ok(out)
}

/// Exhaustive ball and construction set for degree `n` and parameter `k`.
pub fn enumerate_near_commuting(n: usize, k: usize) -> Result<NearCommuting> {
    const LIMIT: usize = 10;
    if n > LIMIT {
        return Err(Error::DegreeTooLarge {
            degree: n,
            limit: LIMIT,
        });
    }
    if k == 0 || k > n {
        return Err(Error::InvalidSegmentSpec(format!(
            "segment count {k} out of range for degree {n}"
        )));
    }
    let a = Permutation::canonical_cycle(n);
    let radius = Frac::new(k as i64 - 1, n as i64);
    let mut ball = BTreeSet::new();
    for y in all_permutations(n)? {
        let d = a.compose(&y).unwrap().hamming(&y.compose(&a).unwrap()).unwrap();
        if d <= radius {
            ball.insert(y);
        }
    }
    let constructed = enumerate_constructed(n, k)?;
    Ok(NearCommuting {
        n,
        k,
        ball,
        constructed,
    })
}

/// Result of the exhaustive `Bcyc(n, ε)` enumeration.
#[derive(Clone, Debug)]
pub struct BcycResult {
    pub n: usize,
    pub epsilon: Frac,
    /// The cycles `w a w⁻¹` over witnesses `w` with `d_H(w²a, aw²) < ε`.
    pub set: BTreeSet<Permutation>,
    /// One witness per collected cycle (the lexicographically first `w`).
    pub witnesses: BTreeMap<Permutation, Permutation>,
    /// `(n-1)!`, the number of n-cycles.
    pub cycles_total: BigUint,
}

impl BcycResult {
    /// Whether `|Bcyc| < (n-1)!/n`; reported, not asserted, since the
    /// inequality only kicks in asymptotically.
    pub fn below_asymptotic_bound(&self) -> bool {
        BigUint::from(self.set.len()) * BigUint::from(self.n) < self.cycles_total
    }
}

/// Exhaustive `Bcyc(n, ε) = {waw⁻¹ : d_H(w²a, aw²) < ε}` with `a` the
/// canonical cycle. The inequality is strict, so `ε = 0` yields the empty
/// set.
pub fn bcyc_enumerate(n: usize, epsilon: Frac) -> Result<BcycResult> {
    const LIMIT: usize = 8;
    if n > LIMIT {
        return Err(Error::DegreeTooLarge {
            degree: n,
            limit: LIMIT,
        });
    }
    if n < 2 {
        return Err(Error::DegreeTooSmall { degree: n, min: 2 });
    }
    let a = Permutation::canonical_cycle(n);
    let mut set = BTreeSet::new();
    let mut witnesses = BTreeMap::new();
    for w in all_permutations(n)? {
        let w2 = w.compose(&w).unwrap();
        let d = w2
            .compose(&a)
            .unwrap()
            .hamming(&a.compose(&w2).unwrap())
            .unwrap();
        if d < epsilon {
            let c = a.conjugate_by(&w).unwrap();
            if set.insert(c.clone()) {
                witnesses.insert(c, w);
            }
        }
    }
    let mut cycles_total = BigUint::from(1u32);
    for i in 1..n {
        cycles_total *= BigUint::from(i);
    }
    Ok(BcycResult {
        n,
        epsilon,
        set,
        witnesses,
        cycles_total,
    })
}
