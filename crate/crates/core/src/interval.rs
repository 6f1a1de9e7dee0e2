//! Exact-rational piecewise translations of `[0, 1)` modulo 1.
//!
//! These model full-group elements of the rational-translation relation:
//! each map is a finite list of half-open pieces `[l, u)` translated by a
//! rational shift mod 1, bijective up to finitely many points. Everything is
//! exact; there is no floating point in this module.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::frac::parse_big;
use crate::perm::Permutation;
use crate::piece::DiagProjection;

fn mod1(x: &BigRational) -> BigRational {
    x - x.floor()
}

#[derive(Clone, PartialEq, Eq, Debug)]
struct Piece {
    lo: BigRational,
    hi: BigRational,
    /// Translation in `[0, 1)`; the piece maps `x ↦ x + shift (mod 1)`.
    shift: BigRational,
}

/// A piecewise translation of `[0, 1)` in canonical form: pieces sorted,
/// consecutive, covering `[0, 1)`, with adjacent equal shifts merged.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntervalTranslationMap {
    pieces: Vec<Piece>,
}

impl IntervalTranslationMap {
    /// Build from raw `(lo, hi, shift)` triples. The intervals must
    /// partition `[0, 1)` and the translated images must tile `[0, 1)` up to
    /// finitely many points; shifts are reduced mod 1.
    pub fn from_pieces(
        raw: Vec<(BigRational, BigRational, BigRational)>,
    ) -> Result<IntervalTranslationMap> {
        if raw.is_empty() {
            return Err(Error::InvalidInterval("no pieces".into()));
        }
        let mut pieces: Vec<Piece> = raw
            .into_iter()
            .map(|(lo, hi, shift)| Piece {
                lo,
                hi,
                shift: mod1(&shift),
            })
            .collect();
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo));
        if !pieces[0].lo.is_zero() {
            return Err(Error::InvalidInterval("domain must start at 0".into()));
        }
        for w in pieces.windows(2) {
            if w[0].hi != w[1].lo {
                return Err(Error::InvalidInterval(format!(
                    "gap or overlap at {}",
                    w[0].hi
                )));
            }
        }
        for p in &pieces {
            if p.lo >= p.hi {
                return Err(Error::InvalidInterval(format!(
                    "empty piece at {}",
                    p.lo
                )));
            }
        }
        if pieces.last().unwrap().hi != BigRational::one() {
            return Err(Error::InvalidInterval("domain must end at 1".into()));
        }
        let map = IntervalTranslationMap {
            pieces: merge_adjacent(pieces),
        };
        map.check_bijective()?;
        Ok(map)
    }

    pub fn identity() -> IntervalTranslationMap {
        IntervalTranslationMap {
            pieces: vec![Piece {
                lo: BigRational::zero(),
                hi: BigRational::one(),
                shift: BigRational::zero(),
            }],
        }
    }

    /// Rotation `x ↦ x + q (mod 1)`.
    pub fn rotation(q: &BigRational) -> IntervalTranslationMap {
        IntervalTranslationMap {
            pieces: vec![Piece {
                lo: BigRational::zero(),
                hi: BigRational::one(),
                shift: mod1(q),
            }],
        }
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    /// Breakpoints `0 = x₀ < … < x_m = 1`.
    pub fn breakpoints(&self) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = self.pieces.iter().map(|p| p.lo.clone()).collect();
        out.push(BigRational::one());
        out
    }

    pub fn pieces(&self) -> impl Iterator<Item = (&BigRational, &BigRational, &BigRational)> {
        self.pieces.iter().map(|p| (&p.lo, &p.hi, &p.shift))
    }

    pub fn shift_at(&self, x: &BigRational) -> &BigRational {
        let idx = self
            .pieces
            .partition_point(|p| p.hi <= *x)
            .min(self.pieces.len() - 1);
        &self.pieces[idx].shift
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        mod1(&(x + self.shift_at(x)))
    }

    /// Exact composition `self ∘ other`.
    pub fn compose(&self, other: &IntervalTranslationMap) -> IntervalTranslationMap {
        // Cut other's pieces at the preimages of self's breakpoints, then on
        // each refined cell the total shift is constant.
        let mut cuts: Vec<BigRational> = Vec::new();
        for p in &other.pieces {
            cuts.push(p.lo.clone());
            for b in self.breakpoints() {
                let pre = mod1(&(&b - &p.shift));
                if pre > p.lo && pre < p.hi {
                    cuts.push(pre);
                }
            }
        }
        cuts.push(BigRational::one());
        cuts.sort();
        cuts.dedup();
        let mut pieces = Vec::new();
        for w in cuts.windows(2) {
            let (lo, hi) = (w[0].clone(), w[1].clone());
            let mid = (&lo + &hi) / BigRational::from_integer(2.into());
            let through = other.eval(&mid);
            let total = mod1(&(other.shift_at(&mid) + self.shift_at(&through)));
            pieces.push(Piece {
                lo,
                hi,
                shift: total,
            });
        }
        IntervalTranslationMap {
            pieces: merge_adjacent(pieces),
        }
    }

    pub fn inverse(&self) -> IntervalTranslationMap {
        let mut raw = Vec::new();
        for p in &self.pieces {
            for (lo, hi) in translate_interval(&p.lo, &p.hi, &p.shift) {
                raw.push((lo, hi, mod1(&(-&p.shift))));
            }
        }
        IntervalTranslationMap::from_pieces(raw).expect("inverse of a bijection is a bijection")
    }

    /// Exact Hamming distance: the Lebesgue measure of the disagreement set.
    /// Two pieces agree exactly where they translate by the same shift.
    pub fn hamming(&self, other: &IntervalTranslationMap) -> BigRational {
        let mut cuts: Vec<BigRational> = self
            .breakpoints()
            .into_iter()
            .chain(other.breakpoints())
            .collect();
        cuts.sort();
        cuts.dedup();
        let mut total = BigRational::zero();
        for w in cuts.windows(2) {
            let mid = (&w[0] + &w[1]) / BigRational::from_integer(2.into());
            if self.shift_at(&mid) != other.shift_at(&mid) {
                total += &w[1] - &w[0];
            }
        }
        total
    }

    /// Mass of each shift class `A_q`, keyed by shift.
    pub fn shift_classes(&self) -> BTreeMap<BigRational, BigRational> {
        let mut classes = BTreeMap::new();
        for p in &self.pieces {
            let entry = classes
                .entry(p.shift.clone())
                .or_insert_with(BigRational::zero);
            *entry += &p.hi - &p.lo;
        }
        classes
    }

    fn check_bijective(&self) -> Result<()> {
        let mut parts: Vec<(BigRational, BigRational)> = Vec::new();
        for p in &self.pieces {
            parts.extend(translate_interval(&p.lo, &p.hi, &p.shift));
        }
        parts.sort_by(|a, b| a.0.cmp(&b.0));
        let mut edge = BigRational::zero();
        for (lo, hi) in &parts {
            if *lo != edge {
                return Err(Error::InvalidInterval(format!(
                    "images do not tile [0,1): gap or overlap at {lo}"
                )));
            }
            edge = hi.clone();
        }
        if edge != BigRational::one() {
            return Err(Error::InvalidInterval(
                "images do not reach 1".into(),
            ));
        }
        Ok(())
    }
}

fn merge_adjacent(pieces: Vec<Piece>) -> Vec<Piece> {
    let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
    for p in pieces {
        match out.last_mut() {
            Some(last) if last.shift == p.shift && last.hi == p.lo => {
                last.hi = p.hi;
            }
            _ => out.push(p),
        }
    }
    out
}

/// `[lo, hi) + shift (mod 1)` as one or two intervals inside `[0, 1)`.
fn translate_interval(
    lo: &BigRational,
    hi: &BigRational,
    shift: &BigRational,
) -> Vec<(BigRational, BigRational)> {
    let one = BigRational::one();
    let a = mod1(&(lo + shift));
    let span = hi - lo;
    let b = &a + &span;
    if b <= one {
        vec![(a, b)]
    } else {
        vec![
            (a, one.clone()),
            (BigRational::zero(), b - one),
        ]
    }
}

/// The grid embedding: permute the `n` cells `[j/n, (j+1)/n)` by `p`, i.e.
/// cell `j` is translated by `(p(j) - j)/n` mod 1.
pub fn embed_perm(p: &Permutation) -> IntervalTranslationMap {
    let n = p.degree();
    let big_n = BigRational::from_integer(BigInt::from(n));
    let raw = (0..n)
        .map(|j| {
            let lo = BigRational::new(BigInt::from(j), BigInt::from(n));
            let hi = BigRational::new(BigInt::from(j + 1), BigInt::from(n));
            let shift = mod1(
                &(BigRational::new(
                    BigInt::from(p.apply(j) as i64 - j as i64),
                    BigInt::one(),
                ) / &big_n),
            );
            (lo, hi, shift)
        })
        .collect();
    IntervalTranslationMap::from_pieces(raw).expect("grid embedding is a bijection")
}

/// Classic interval exchange: cut `[0, 1)` at the given points and lay the
/// segments out in the order given by `sigma`.
pub fn interval_exchange(
    cuts: &[BigRational],
    sigma: &Permutation,
) -> Result<IntervalTranslationMap> {
    let mut starts = vec![BigRational::zero()];
    starts.extend(cuts.iter().cloned());
    starts.sort();
    starts.dedup();
    let k = starts.len();
    if sigma.degree() != k {
        return Err(Error::InvalidInterval(format!(
            "{} segments but arrangement of degree {}",
            k,
            sigma.degree()
        )));
    }
    if starts.iter().any(|s| s < &BigRational::zero() || s >= &BigRational::one()) {
        return Err(Error::InvalidInterval("cuts must lie in [0,1)".into()));
    }
    let mut ends = starts[1..].to_vec();
    ends.push(BigRational::one());
    let lengths: Vec<BigRational> = (0..k).map(|j| &ends[j] - &starts[j]).collect();
    let inv = sigma.inverse();
    let mut new_start = vec![BigRational::zero(); k];
    let mut offset = BigRational::zero();
    for slot in 0..k {
        let seg = inv.apply(slot);
        new_start[seg] = offset.clone();
        offset += &lengths[seg];
    }
    let raw = (0..k)
        .map(|j| {
            (
                starts[j].clone(),
                ends[j].clone(),
                mod1(&(&new_start[j] - &starts[j])),
            )
        })
        .collect();
    IntervalTranslationMap::from_pieces(raw)
}

/// Result of approximating a map by a grid permutation.
#[derive(Clone, Debug)]
pub struct GridApproximation {
    pub n: usize,
    pub perm: Permutation,
    /// Exact `d_H(Φ_n(perm), φ)`.
    pub achieved: BigRational,
}

/// Approximate `φ` within `2ε` by a grid permutation.
///
/// Shift classes are kept greedily by mass until the kept mass exceeds
/// `1 - ε`; the grid is the lcm of all breakpoint denominators and the kept
/// shift denominators, so kept classes are exactly grid-measurable and the
/// achieved distance is at most the discarded mass, strictly below `ε`.
pub fn approximate(
    phi: &IntervalTranslationMap,
    epsilon: &BigRational,
) -> Result<GridApproximation> {
    if epsilon <= &BigRational::zero() || epsilon >= &BigRational::one() {
        return Err(Error::LambdaOutOfRange {
            value: epsilon.to_string(),
        });
    }
    // Largest classes first; ties broken by shift for determinism.
    let mut classes: Vec<(BigRational, BigRational)> = phi
        .shift_classes()
        .into_iter()
        .collect();
    classes.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let threshold = BigRational::one() - epsilon;
    let mut kept: Vec<BigRational> = Vec::new();
    let mut mass = BigRational::zero();
    for (shift, m) in &classes {
        if mass > threshold {
            break;
        }
        kept.push(shift.clone());
        mass += m;
    }
    let mut denom = BigInt::one();
    for b in phi.breakpoints() {
        denom = denom.lcm(b.denom());
    }
    for q in &kept {
        denom = denom.lcm(q.denom());
    }
    let n = denom
        .to_usize()
        .filter(|&n| n <= 1_000_000)
        .ok_or_else(|| Error::InvalidInterval(format!("grid {denom} too fine")))?;
    let perm = grid_permutation(phi, n);
    let achieved = embed_perm(&perm).hamming(phi);
    debug_assert!(&achieved < epsilon);
    Ok(GridApproximation { n, perm, achieved })
}

/// The disjointification path: approximate on a caller-supplied grid that
/// need not resolve the map exactly. Cells are assigned to the kept class
/// with the largest overlap; colliding targets are dropped to the ascending
/// completion. Distances degrade gracefully and are reported exactly.
pub fn approximate_on_grid(
    phi: &IntervalTranslationMap,
    n: usize,
    epsilon: &BigRational,
) -> Result<GridApproximation> {
    if n == 0 {
        return Err(Error::DegreeTooSmall { degree: 0, min: 1 });
    }
    let mut classes: Vec<(BigRational, BigRational)> = phi.shift_classes().into_iter().collect();
    classes.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let threshold = BigRational::one() - epsilon;
    let mut kept: Vec<BigRational> = Vec::new();
    let mut mass = BigRational::zero();
    for (shift, m) in &classes {
        if mass > threshold {
            break;
        }
        // Only grid-aligned shifts can be realised on this grid.
        if (shift * BigRational::from_integer(BigInt::from(n))).is_integer() {
            kept.push(shift.clone());
            mass += m;
        }
    }
    let perm = grid_permutation_majority(phi, n, &kept);
    let achieved = embed_perm(&perm).hamming(phi);
    Ok(GridApproximation { n, perm, achieved })
}

/// Exact-grid assignment: every breakpoint is grid-aligned, so each cell has
/// a single shift. The kept classes fixed the grid; once it is chosen, any
/// cell whose shift is grid-aligned moves rigidly for free (this is what
/// returns exactly-representable maps at distance zero), the rest complete
/// ascending.
fn grid_permutation(phi: &IntervalTranslationMap, n: usize) -> Permutation {
    let big_n = BigInt::from(n);
    let mut images: Vec<Option<usize>> = vec![None; n];
    let mut taken = vec![false; n];
    for j in 0..n {
        let lo = BigRational::new(BigInt::from(j), big_n.clone());
        let shift = phi.shift_at(&lo);
        let scaled = shift * BigRational::from_integer(big_n.clone());
        if scaled.is_integer() {
            let offset = scaled.to_integer().to_usize().expect("shift in [0,1)");
            let target = (j + offset) % n;
            images[j] = Some(target);
            taken[target] = true;
        }
    }
    complete_cells(images, taken)
}

/// Majority assignment for coarse grids.
fn grid_permutation_majority(
    phi: &IntervalTranslationMap,
    n: usize,
    kept: &[BigRational],
) -> Permutation {
    let big_n = BigInt::from(n);
    let mut images: Vec<Option<usize>> = vec![None; n];
    let mut taken = vec![false; n];
    for j in 0..n {
        let lo = BigRational::new(BigInt::from(j), big_n.clone());
        let hi = BigRational::new(BigInt::from(j + 1), big_n.clone());
        // Overlap of this cell with each kept class.
        let mut best: Option<(&BigRational, BigRational)> = None;
        for q in kept {
            let mut overlap = BigRational::zero();
            for (plo, phi_hi, shift) in phi.pieces() {
                if shift == q {
                    let l = plo.max(&lo);
                    let h = phi_hi.min(&hi);
                    if l < h {
                        overlap += h - l;
                    }
                }
            }
            if best.as_ref().is_none_or(|(_, m)| overlap > *m) {
                best = Some((q, overlap));
            }
        }
        if let Some((q, overlap)) = best {
            if overlap.is_zero() {
                continue;
            }
            let offset = (q * BigRational::from_integer(big_n.clone()))
                .to_integer()
                .to_usize()
                .expect("kept shifts are grid-aligned");
            let target = (j + offset) % n;
            if !taken[target] {
                images[j] = Some(target);
                taken[target] = true;
            }
        }
    }
    complete_cells(images, taken)
}

fn complete_cells(images: Vec<Option<usize>>, taken: Vec<bool>) -> Permutation {
    let n = images.len();
    let mut free = (0..n).filter(|&v| !taken[v]);
    let full = images
        .into_iter()
        .map(|v| v.unwrap_or_else(|| free.next().expect("cell available")))
        .collect();
    Permutation::from_images(full).expect("cell assignment is a bijection")
}

/// Finite-level `a_λ`: the projection onto `{0, …, λn - 1}`. Errors when
/// `λ n` is not an integer.
pub fn a_lambda_projection(lambda: &BigRational, n: usize) -> Result<DiagProjection> {
    if lambda < &BigRational::zero() || lambda > &BigRational::one() {
        return Err(Error::LambdaOutOfRange {
            value: lambda.to_string(),
        });
    }
    let scaled = lambda * BigRational::from_integer(BigInt::from(n));
    if !scaled.is_integer() {
        return Err(Error::NotGridAligned {
            lambda: lambda.to_string(),
            n,
        });
    }
    let size = scaled.to_integer().to_usize().expect("at most n");
    DiagProjection::from_indices(n, 0..size)
}

/// Interval-level `a_λ`: the set `[0, λ)`.
pub fn a_lambda_interval(lambda: &BigRational) -> Result<(BigRational, BigRational)> {
    if lambda < &BigRational::zero() || lambda > &BigRational::one() {
        return Err(Error::LambdaOutOfRange {
            value: lambda.to_string(),
        });
    }
    Ok((BigRational::zero(), lambda.clone()))
}

impl fmt::Display for IntervalTranslationMap {
    /// One piece per line: "l u q" with exact rationals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (lo, hi, shift) in self.pieces() {
            writeln!(f, "{lo} {hi} {shift}")?;
        }
        Ok(())
    }
}

impl FromStr for IntervalTranslationMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut raw = Vec::new();
        for line in s.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(Error::Parse(format!("expected 'l u q', got {line:?}")));
            }
            raw.push((parse_big(toks[0])?, parse_big(toks[1])?, parse_big(toks[2])?));
        }
        IntervalTranslationMap::from_pieces(raw)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frac::big_ratio;

    fn rot(n: i64, d: i64) -> IntervalTranslationMap {
        IntervalTranslationMap::rotation(&big_ratio(n, d))
    }

    #[test]
    fn compose_with_identity() {
        let u = rot(1, 3);
        assert_eq!(u.compose(&IntervalTranslationMap::identity()), u);
        assert_eq!(IntervalTranslationMap::identity().compose(&u), u);
    }

    #[test]
    fn rotations_form_a_group() {
        assert_eq!(rot(1, 3).compose(&rot(1, 3)), rot(2, 3));
        assert_eq!(rot(1, 3).compose(&rot(2, 3)), IntervalTranslationMap::identity());
        let u = rot(5, 7);
        assert_eq!(u.compose(&u.inverse()), IntervalTranslationMap::identity());
    }

    #[test]
    fn compose_against_pointwise_eval() {
        let u = interval_exchange(
            &[big_ratio(1, 4), big_ratio(2, 3)],
            &Permutation::from_images(vec![2, 0, 1]).unwrap(),
        )
        .unwrap();
        let v = rot(1, 6);
        let comp = u.compose(&v);
        for k in 0..60 {
            let x = big_ratio(2 * k + 1, 120);
            assert_eq!(comp.eval(&x), u.eval(&v.eval(&x)), "at x = {x}");
        }
    }

    #[test]
    fn hamming_examples() {
        let u = rot(1, 2);
        assert!(u.hamming(&u).is_zero());
        assert_eq!(
            u.hamming(&IntervalTranslationMap::identity()),
            BigRational::one()
        );
        // Swap the two cells of [0, 1/4), identity elsewhere: disagrees with
        // the identity exactly on [0, 1/4).
        let c = IntervalTranslationMap::from_pieces(vec![
            (big_ratio(0, 1), big_ratio(1, 8), big_ratio(1, 8)),
            (big_ratio(1, 8), big_ratio(1, 4), big_ratio(7, 8)),
            (big_ratio(1, 4), big_ratio(1, 1), big_ratio(0, 1)),
        ])
        .unwrap();
        assert_eq!(
            c.hamming(&IntervalTranslationMap::identity()),
            big_ratio(1, 4)
        );
    }

    #[test]
    fn invalid_pieces_rejected() {
        // Gap in the domain.
        assert!(IntervalTranslationMap::from_pieces(vec![
            (big_ratio(0, 1), big_ratio(1, 2), big_ratio(0, 1)),
            (big_ratio(2, 3), big_ratio(1, 1), big_ratio(0, 1)),
        ])
        .is_err());
        // Images overlap: both halves shift to the same place.
        assert!(IntervalTranslationMap::from_pieces(vec![
            (big_ratio(0, 1), big_ratio(1, 2), big_ratio(0, 1)),
            (big_ratio(1, 2), big_ratio(1, 1), big_ratio(1, 2)),
        ])
        .is_err());
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(
            embed_perm(&Permutation::identity(5)),
            IntervalTranslationMap::identity()
        );
        let swap = Permutation::from_images(vec![1, 0]).unwrap();
        assert_eq!(embed_perm(&swap), rot(1, 2));
    }

    #[test]
    fn embedding_is_isometric_and_multiplicative() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(97);
        for _ in 0..40 {
            let n = rand::Rng::random_range(&mut rng, 1..=10);
            let p = Permutation::random(n, &mut rng);
            let q = Permutation::random(n, &mut rng);
            let dist = embed_perm(&p).hamming(&embed_perm(&q));
            let expect = crate::frac::to_big(p.hamming(&q).unwrap());
            assert_eq!(dist, expect);
            assert_eq!(
                embed_perm(&p.compose(&q).unwrap()),
                embed_perm(&p).compose(&embed_perm(&q))
            );
        }
    }

    #[test]
    fn embedding_tensor_compatibility() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(101);
        for _ in 0..40 {
            let n = rand::Rng::random_range(&mut rng, 1..=8);
            let r = rand::Rng::random_range(&mut rng, 1..=4);
            let p = Permutation::random(n, &mut rng);
            assert_eq!(embed_perm(&p), embed_perm(&p.tensor_identity(r)));
        }
    }

    #[test]
    fn approximation_of_rotation_is_exact() {
        let phi = rot(1, 3);
        let res = approximate(&phi, &big_ratio(1, 10)).unwrap();
        assert_eq!(res.n, 3);
        assert_eq!(res.perm, Permutation::canonical_cycle(3));
        assert!(res.achieved.is_zero());
    }

    #[test]
    fn approximation_of_grid_maps_is_exact() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(103);
        for _ in 0..20 {
            let m = rand::Rng::random_range(&mut rng, 1..=9);
            let q = Permutation::random(m, &mut rng);
            let phi = embed_perm(&q);
            let res = approximate(&phi, &big_ratio(1, 4)).unwrap();
            assert!(res.achieved.is_zero(), "perm {q:?}");
        }
        // Half swap: n = 2, p the transposition.
        let phi = IntervalTranslationMap::from_pieces(vec![
            (big_ratio(0, 1), big_ratio(1, 2), big_ratio(1, 2)),
            (big_ratio(1, 2), big_ratio(1, 1), big_ratio(1, 2)),
        ])
        .unwrap();
        let res = approximate(&phi, &big_ratio(1, 4)).unwrap();
        assert_eq!(res.n, 2);
        assert!(res.achieved.is_zero());
    }

    #[test]
    fn coarse_grid_path_reports_distance() {
        let phi = interval_exchange(
            &[big_ratio(1, 3)],
            &Permutation::from_images(vec![1, 0]).unwrap(),
        )
        .unwrap();
        // Grid 6 resolves the map exactly.
        let fine = approximate_on_grid(&phi, 6, &big_ratio(1, 10)).unwrap();
        assert!(fine.achieved.is_zero());
        // Grid 2 cannot express the shift 2/3; the distance is reported, not
        // hidden.
        let coarse = approximate_on_grid(&phi, 2, &big_ratio(1, 10)).unwrap();
        assert!(coarse.achieved > BigRational::zero());
    }

    #[test]
    fn a_lambda_examples() {
        assert!(a_lambda_projection(&big_ratio(0, 1), 4).unwrap().is_empty());
        assert_eq!(
            a_lambda_projection(&big_ratio(1, 1), 4).unwrap(),
            DiagProjection::full(4)
        );
        assert_eq!(
            a_lambda_projection(&big_ratio(1, 2), 4).unwrap(),
            DiagProjection::from_indices(4, [0, 1]).unwrap()
        );
        assert!(a_lambda_projection(&big_ratio(1, 3), 4).is_err());
        let (lo, hi) = a_lambda_interval(&big_ratio(1, 3)).unwrap();
        assert!(lo.is_zero());
        assert_eq!(hi, big_ratio(1, 3));
    }

    #[test]
    fn text_format_round_trip() {
        let phi = interval_exchange(
            &[big_ratio(1, 4), big_ratio(5, 12)],
            &Permutation::from_images(vec![2, 0, 1]).unwrap(),
        )
        .unwrap();
        let text = phi.to_string();
        let back: IntervalTranslationMap = text.parse().unwrap();
        assert_eq!(back, phi);
        assert!("0 1/2 0".parse::<IntervalTranslationMap>().is_err());
    }
}
