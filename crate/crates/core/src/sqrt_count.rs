//! Exact counting of square roots in the symmetric group.
//!
//! `S₂(y) = |{x : x² = y}|` depends only on the cycle type of `y`: squaring
//! splits an even cycle into two cycles of half length and either preserves
//! an odd cycle or merges two equal odd cycles, so roots are counted per
//! cycle length. Lengths with an odd number of even cycles admit no root.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::perm::{all_permutations, Permutation};

/// Multiset of cycle lengths: `counts[len] = number of cycles of that length`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub struct CycleType {
    counts: BTreeMap<usize, usize>,
}

impl CycleType {
    pub fn new(counts: BTreeMap<usize, usize>) -> Result<Self> {
        if counts.iter().any(|(&len, &c)| len == 0 || c == 0) {
            return Err(Error::Parse("cycle lengths and counts must be positive".into()));
        }
        Ok(CycleType { counts })
    }

    pub fn identity(n: usize) -> Self {
        let mut counts = BTreeMap::new();
        if n > 0 {
            counts.insert(1, n);
        }
        CycleType { counts }
    }

    pub fn degree(&self) -> usize {
        self.counts.iter().map(|(len, c)| len * c).sum()
    }

    pub fn count(&self, len: usize) -> usize {
        self.counts.get(&len).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &BTreeMap<usize, usize> {
        &self.counts
    }

    /// All cycle types of degree `n`, i.e. the partitions of `n`.
    pub fn all_of_degree(n: usize) -> Vec<CycleType> {
        let mut out = Vec::new();
        let mut parts = Vec::new();
        fn rec(remaining: usize, max: usize, parts: &mut Vec<usize>, out: &mut Vec<CycleType>) {
            if remaining == 0 {
                let mut counts = BTreeMap::new();
                for &p in parts.iter() {
                    *counts.entry(p).or_insert(0) += 1;
                }
                out.push(CycleType { counts });
                return;
            }
            for next in (1..=remaining.min(max)).rev() {
                parts.push(next);
                rec(remaining - next, next, parts, out);
                parts.pop();
            }
        }
        rec(n, n, &mut parts, &mut out);
        out
    }

    /// A canonical permutation with this cycle type: cycles laid out on
    /// consecutive points, longest first.
    pub fn representative(&self) -> Permutation {
        let n = self.degree();
        let mut images: Vec<usize> = (0..n).collect();
        let mut start = 0;
        for (&len, &count) in self.counts.iter().rev() {
            for _ in 0..count {
                for off in 0..len {
                    images[start + off] = start + (off + 1) % len;
                }
                start += len;
            }
        }
        Permutation::from_images(images).expect("cycle layout is a bijection")
    }
}

impl fmt::Display for CycleType {
    /// The "2^2 3^1" format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (len, count) in &self.counts {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{len}^{count}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for CycleType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut counts = BTreeMap::new();
        for tok in s.split_whitespace() {
            let (len, count) = match tok.split_once('^') {
                Some((l, c)) => (l, c),
                None => (tok, "1"),
            };
            let len: usize = len
                .parse()
                .map_err(|_| Error::Parse(format!("bad cycle length {tok:?}")))?;
            let count: usize = count
                .parse()
                .map_err(|_| Error::Parse(format!("bad cycle count {tok:?}")))?;
            if len == 0 || count == 0 {
                return Err(Error::Parse(format!("zero entry in {tok:?}")));
            }
            *counts.entry(len).or_insert(0) += count;
        }
        Ok(CycleType { counts })
    }
}

pub fn cycle_type(p: &Permutation) -> CycleType {
    let mut counts = BTreeMap::new();
    for cycle in p.cycles() {
        *counts.entry(cycle.len()).or_insert(0) += 1;
    }
    CycleType { counts }
}

struct Factorials {
    cache: Vec<BigUint>,
}

impl Factorials {
    fn new() -> Self {
        Factorials {
            cache: vec![BigUint::one()],
        }
    }

    fn get(&mut self, n: usize) -> BigUint {
        while self.cache.len() <= n {
            let next = self.cache.last().unwrap() * BigUint::from(self.cache.len());
            self.cache.push(next);
        }
        self.cache[n].clone()
    }
}

/// Number of ways to choose `k` disjoint unordered pairs from `c` items,
/// as `c! / ((c-2k)! k! 2^k)`.
fn pairings(fact: &mut Factorials, c: usize, k: usize) -> BigUint {
    let denom = fact.get(c - 2 * k) * fact.get(k) * (BigUint::one() << k);
    fact.get(c) / denom
}

/// Exact `S₂(y)` for any `y` of the given cycle type.
///
/// Zero when some even length has an odd cycle count; otherwise the product
/// over lengths of the per-length factor: even length `2m` with count `c`
/// contributes `c!/(c/2)! * m^(c/2)`, odd length `i` with count `c`
/// contributes `Σ_k c! i^k / ((c-2k)! k! 2^k)`.
pub fn sqrt_count_exact(t: &CycleType) -> BigUint {
    let mut fact = Factorials::new();
    let mut total = BigUint::one();
    for (&len, &count) in t.counts() {
        if len % 2 == 0 {
            if count % 2 == 1 {
                return BigUint::zero();
            }
            let half = count / 2;
            let factor =
                fact.get(count) / fact.get(half) * BigUint::from(len / 2).pow(half as u32);
            total *= factor;
        } else {
            let mut factor = BigUint::zero();
            for k in 0..=count / 2 {
                factor += pairings(&mut fact, count, k) * BigUint::from(len).pow(k as u32);
            }
            total *= factor;
        }
    }
    total
}

/// Independent oracle: exhaustively count `x` with `x ∘ x = y`.
pub fn sqrt_count_bruteforce(y: &Permutation) -> Result<u64> {
    const LIMIT: usize = 9;
    let n = y.degree();
    if n > LIMIT {
        return Err(Error::DegreeTooLarge {
            degree: n,
            limit: LIMIT,
        });
    }
    let mut count = 0;
    for x in all_permutations(n)? {
        if x.compose(&x).unwrap() == *y {
            count += 1;
        }
    }
    Ok(count)
}

/// `S₂(Id_n) = Σ_{k=0}^{⌊n/2⌋} n! / ((n-2k)! k! 2^k)`, the number of
/// involutions (including the identity) in Sym(n).
pub fn involution_sum(n: usize) -> BigUint {
    let mut fact = Factorials::new();
    let mut total = BigUint::zero();
    for k in 0..=n / 2 {
        total += pairings(&mut fact, n, k);
    }
    total
}

#[derive(Clone, Debug)]
pub struct SqrtBound {
    /// `S₂(Id_n)`.
    pub lhs: BigUint,
    /// `⌊n/2⌋ · n! / ⌊n/3⌋!`, compared as an exact rational.
    pub rhs: BigRational,
    pub holds: bool,
}

/// Checks `S₂(Id_n) < ⌊n/2⌋ · n! · (⌊n/3⌋!)⁻¹`.
pub fn sqrt_bound_check(n: usize) -> Result<SqrtBound> {
    if n < 3 {
        return Err(Error::DegreeTooSmall { degree: n, min: 3 });
    }
    let mut fact = Factorials::new();
    let lhs = involution_sum(n);
    let rhs = BigRational::new(
        BigInt::from(n / 2) * BigInt::from(fact.get(n)),
        BigInt::from(fact.get(n / 3)),
    );
    let holds = BigRational::from_integer(BigInt::from(lhs.clone())) < rhs;
    Ok(SqrtBound { lhs, rhs, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn t(s: &str) -> CycleType {
        s.parse().unwrap()
    }

    #[test]
    fn cycle_type_examples() {
        assert_eq!(cycle_type(&Permutation::identity(4)), t("1^4"));
        assert_eq!(cycle_type(&Permutation::canonical_cycle(5)), t("5^1"));
        let double = Permutation::from_images(vec![1, 0, 3, 2]).unwrap();
        assert_eq!(cycle_type(&double), t("2^2"));
        assert_eq!(t("2^2").degree(), 4);
    }

    #[test]
    fn representative_has_the_type() {
        for n in 1..=7 {
            for ty in CycleType::all_of_degree(n) {
                assert_eq!(cycle_type(&ty.representative()), ty);
            }
        }
    }

    #[test]
    fn partition_counts() {
        let expected = [1, 1, 2, 3, 5, 7, 11, 15, 22];
        for (n, &e) in expected.iter().enumerate() {
            assert_eq!(CycleType::all_of_degree(n).len(), e);
        }
    }

    #[test]
    fn exact_counts_match_brute_force_small() {
        assert_eq!(sqrt_count_exact(&t("1^4")), BigUint::from(10u32));
        assert_eq!(sqrt_count_exact(&t("2^1")), BigUint::zero());
        assert_eq!(sqrt_count_exact(&t("3^1")), BigUint::one());
        assert_eq!(sqrt_count_exact(&t("2^2")), BigUint::from(2u32));
        assert_eq!(
            sqrt_count_bruteforce(&Permutation::identity(2)).unwrap(),
            2
        );
        assert_eq!(
            sqrt_count_bruteforce(&Permutation::canonical_cycle(3)).unwrap(),
            1
        );
        assert!(sqrt_count_bruteforce(&Permutation::identity(10)).is_err());
    }

    #[test]
    fn positivity_iff_even_counts_even() {
        for n in 1..=8 {
            for ty in CycleType::all_of_degree(n) {
                let ok = ty
                    .counts()
                    .iter()
                    .all(|(&len, &c)| len % 2 == 1 || c % 2 == 0);
                assert_eq!(!sqrt_count_exact(&ty).is_zero(), ok, "type {ty}");
            }
        }
    }

    #[test]
    fn conjugation_invariance_by_sampling() {
        let mut rng = ChaCha12Rng::seed_from_u64(41);
        for _ in 0..50 {
            let y = Permutation::random(6, &mut rng);
            let w = Permutation::random(6, &mut rng);
            let conj = y.conjugate_by(&w).unwrap();
            assert_eq!(cycle_type(&y), cycle_type(&conj));
            assert_eq!(
                sqrt_count_bruteforce(&y).unwrap(),
                sqrt_count_bruteforce(&conj).unwrap()
            );
        }
    }

    #[test]
    fn involution_sum_values() {
        assert_eq!(involution_sum(0), BigUint::one());
        assert_eq!(involution_sum(4), BigUint::from(10u32));
        // Recurrence I(n) = I(n-1) + (n-1) I(n-2).
        for n in 2..=20 {
            let expect = involution_sum(n - 1) + BigUint::from(n - 1) * involution_sum(n - 2);
            assert_eq!(involution_sum(n), expect);
        }
    }

    #[test]
    fn bound_holds_at_small_n() {
        for n in [6, 12, 30] {
            let b = sqrt_bound_check(n).unwrap();
            assert!(b.holds, "bound fails at n = {n}: {} vs {}", b.lhs, b.rhs);
        }
        assert!(sqrt_bound_check(2).is_err());
    }

    #[test]
    fn type_format_round_trip() {
        let ty = t("2^2 3^1");
        assert_eq!(ty.to_string(), "2^2 3^1");
        assert_eq!(ty.to_string().parse::<CycleType>().unwrap(), ty);
        assert_eq!(t("3 2 2"), ty);
    }
}
