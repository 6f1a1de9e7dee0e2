//! Permutations of `{0, …, n-1}` with exact Hamming distances.
//!
//! The matrix picture used throughout: a permutation `p` corresponds to the
//! 0/1 matrix with a single 1 in column `j` at row `p(j)`. Matrix products
//! then agree with `compose`, i.e. `(p ∘ q)(i) = p(q(i))`.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::frac::Frac;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// Build from the image sequence, rejecting non-bijections with the
    /// offending index. Degrees start at 1.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::DegreeTooSmall { degree: 0, min: 1 });
        }
        let mut seen = vec![false; n];
        for (j, &v) in images.iter().enumerate() {
            if v >= n || seen[v] {
                return Err(Error::InvalidPermutation { index: j });
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (0..n).collect(),
        }
    }

    /// The cycle `i ↦ i+1 (mod n)`.
    pub fn canonical_cycle(n: usize) -> Self {
        Permutation {
            images: (0..n).map(|i| (i + 1) % n.max(1)).collect(),
        }
    }

    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a >= n || b >= n {
            return Err(Error::IndexOutOfRange {
                index: a.max(b),
                bound: n,
            });
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { images: inv }
    }

    /// `w ∘ self ∘ w⁻¹`.
    pub fn conjugate_by(&self, w: &Permutation) -> Result<Permutation> {
        w.compose(self)?.compose(&w.inverse())
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let n = self.degree();
        if n == 0 {
            return self.clone();
        }
        let base = if k >= 0 { self.clone() } else { self.inverse() };
        let mut out = Permutation::identity(n);
        for _ in 0..k.unsigned_abs() {
            out = base.compose(&out).expect("equal degrees");
        }
        out
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &v)| *i == v).count()
    }

    /// Fraction of fixed points; this is the normalised trace of the
    /// permutation matrix.
    pub fn fixed_fraction(&self) -> Frac {
        Frac::new(self.fixed_points() as i64, self.degree() as i64)
    }

    /// Normalised Hamming distance `|{i : p(i) ≠ q(i)}| / n`.
    pub fn hamming(&self, other: &Permutation) -> Result<Frac> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let moved = self
            .images
            .iter()
            .zip(&other.images)
            .filter(|(a, b)| a != b)
            .count();
        Ok(Frac::new(moved as i64, self.degree() as i64))
    }

    /// Tensor with an identity block: degree `n`, index convention
    /// `global = coarse * r + fine`, so `(v*r + i) ↦ p(v)*r + i`.
    pub fn tensor_identity(&self, r: usize) -> Permutation {
        let n = self.degree();
        let mut images = vec![0; n * r];
        for v in 0..n {
            for i in 0..r {
                images[v * r + i] = self.images[v] * r + i;
            }
        }
        Permutation { images }
    }

    /// Acts as `self` on the first block and as `other` (shifted) on the rest.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let n = self.degree();
        let mut images = self.images.clone();
        images.extend(other.images.iter().map(|&v| v + n));
        Permutation { images }
    }

    /// Disjoint cycle decomposition; each cycle starts at its smallest
    /// element and cycles are ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.images[cur];
            }
            out.push(cycle);
        }
        out
    }

    pub fn is_n_cycle(&self) -> bool {
        self.degree() >= 1 && self.cycles().len() == 1
    }

    pub fn is_involution(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| self.images[v] == i)
    }

    /// Uniformly random permutation.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
        let mut images: Vec<usize> = (0..n).collect();
        images.shuffle(rng);
        Permutation { images }
    }

    /// Uniformly random n-cycle, as a conjugate of the canonical cycle by a
    /// uniform permutation. Every n-cycle arises from exactly n conjugators,
    /// so the output is uniform over the (n-1)! cycles.
    pub fn random_cycle<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Permutation> {
        if n < 2 {
            return Err(Error::DegreeTooSmall { degree: n, min: 2 });
        }
        let w = Permutation::random(n, rng);
        Permutation::canonical_cycle(n).conjugate_by(&w)
    }

    /// Uniformly random involution (including the identity), by a standard
    /// sequential pairing walk: the smallest unplaced point is fixed or paired
    /// with weights matching the involution counts of the remaining points.
    pub fn random_involution<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Permutation {
        // I(m) = I(m-1) + (m-1) I(m-2); choose "fix" with odds I(m-1) : rest.
        // Exact weights overflow quickly, so use the ratio I(m-1)/I(m) via
        // floating point, which is fine for sampling purposes.
        let mut inv: Vec<f64> = vec![1.0, 1.0];
        for m in 2..=n {
            let v = inv[m - 1] + (m as f64 - 1.0) * inv[m - 2];
            inv.push(v);
        }
        let mut images: Vec<Option<usize>> = vec![None; n];
        let mut free: Vec<usize> = (0..n).collect();
        while let Some(&a) = free.first() {
            let m = free.len();
            if m == 1 {
                images[a] = Some(a);
                free.remove(0);
                continue;
            }
            let p_fix = inv[m - 1] / inv[m];
            if rng.random::<f64>() < p_fix {
                images[a] = Some(a);
                free.remove(0);
            } else {
                let k = rng.random_range(1..m);
                let b = free[k];
                images[a] = Some(b);
                images[b] = Some(a);
                free.remove(k);
                free.remove(0);
            }
        }
        Permutation {
            images: images.into_iter().map(|v| v.expect("all placed")).collect(),
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.images {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]", self)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses the one-line format "1 2 0".
    fn from_str(s: &str) -> Result<Self> {
        let images: Vec<usize> = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad image {tok:?}")))
            })
            .collect::<Result<_>>()?;
        Permutation::from_images(images)
    }
}

/// All permutations of degree `n` in lexicographic order of their image
/// sequences. Guarded so a typo cannot ask for 12! elements.
pub fn all_permutations(n: usize) -> Result<impl Iterator<Item = Permutation>> {
    const LIMIT: usize = 10;
    if n > LIMIT {
        return Err(Error::DegreeTooLarge {
            degree: n,
            limit: LIMIT,
        });
    }
    let mut current: Option<Vec<usize>> = Some((0..n).collect());
    Ok(std::iter::from_fn(move || {
        let images = current.take()?;
        let out = Permutation {
            images: images.clone(),
        };
        current = next_lex(images);
        Some(out)
    }))
}

fn next_lex(mut v: Vec<usize>) -> Option<Vec<usize>> {
    if v.len() < 2 {
        return None;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    Some(v)
}
