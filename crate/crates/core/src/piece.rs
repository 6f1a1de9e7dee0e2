//! Pieces of permutations: injective partial maps, diagonal projections and
//! block views of amplified permutations.
//!
//! All three kinds are 0/1 matrices with at most one entry per row and
//! column, so a row is described by the column of its 1 (if any). The
//! row-counting Hamming distance compares these row descriptions.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::perm::Permutation;

/// Injective partial map on `{0, …, n-1}`; the matrix has the 1 of column
/// `j` at row `map[j]` when defined.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialPermutation {
    map: Vec<Option<usize>>,
}

impl PartialPermutation {
    pub fn from_map(map: Vec<Option<usize>>) -> Result<Self> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &img in map.iter().flatten() {
            if img >= n {
                return Err(Error::IndexOutOfRange {
                    index: img,
                    bound: n,
                });
            }
            if seen[img] {
                return Err(Error::NotInjective { value: img });
            }
            seen[img] = true;
        }
        Ok(PartialPermutation { map })
    }

    pub fn empty(n: usize) -> Self {
        PartialPermutation { map: vec![None; n] }
    }

    pub fn degree(&self) -> usize {
        self.map.len()
    }

    pub fn get(&self, j: usize) -> Option<usize> {
        self.map[j]
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.map
            .iter()
            .enumerate()
            .filter_map(|(j, v)| v.map(|_| j))
    }

    pub fn domain_size(&self) -> usize {
        self.map.iter().flatten().count()
    }

    /// `|domain| / n`; equals the normalised trace of the projection onto
    /// the domain (or image).
    pub fn domain_fraction(&self) -> Frac {
        Frac::new(self.domain_size() as i64, self.degree() as i64)
    }

    pub fn is_full(&self) -> bool {
        self.map.iter().all(Option::is_some)
    }

    pub fn to_permutation(&self) -> Option<Permutation> {
        if !self.is_full() {
            return None;
        }
        Permutation::from_images(self.map.iter().map(|v| v.unwrap()).collect()).ok()
    }

    /// Partial composition `(self ∘ other)(j) = self(other(j))`, matching the
    /// matrix product of the two 0/1 matrices.
    pub fn compose(&self, other: &PartialPermutation) -> Result<PartialPermutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let map = other
            .map
            .iter()
            .map(|v| v.and_then(|m| self.map[m]))
            .collect();
        Ok(PartialPermutation { map })
    }

    /// Transpose of the matrix; as a map, the inverse partial map.
    pub fn transpose(&self) -> PartialPermutation {
        let mut map = vec![None; self.degree()];
        for (j, v) in self.map.iter().enumerate() {
            if let Some(i) = v {
                map[*i] = Some(j);
            }
        }
        PartialPermutation { map }
    }

    /// Projection onto the image: `self ∘ selfᵀ` as a diagonal projection.
    pub fn image_projection(&self) -> DiagProjection {
        DiagProjection::from_set(self.degree(), self.map.iter().flatten().copied().collect())
            .expect("image indices in range")
    }

    /// Deterministic completion to a permutation: keep the defined entries
    /// and match the remaining columns to the remaining rows in ascending
    /// order.
    pub fn complete(&self) -> Permutation {
        let n = self.degree();
        let mut taken = vec![false; n];
        for &img in self.map.iter().flatten() {
            taken[img] = true;
        }
        let mut free_rows = (0..n).filter(|&i| !taken[i]);
        let images = self
            .map
            .iter()
            .map(|v| match v {
                Some(i) => *i,
                None => free_rows.next().expect("row available"),
            })
            .collect();
        Permutation::from_images(images).expect("completion is a bijection")
    }

    /// Restriction of a permutation to a subset of its domain.
    pub fn restrict(p: &Permutation, domain: &DiagProjection) -> Result<PartialPermutation> {
        if p.degree() != domain.degree() {
            return Err(Error::DegreeMismatch {
                left: p.degree(),
                right: domain.degree(),
            });
        }
        let map = (0..p.degree())
            .map(|j| domain.contains(j).then(|| p.apply(j)))
            .collect();
        Ok(PartialPermutation { map })
    }
}

impl From<&Permutation> for PartialPermutation {
    fn from(p: &Permutation) -> Self {
        PartialPermutation {
            map: p.images().iter().map(|&v| Some(v)).collect(),
        }
    }
}

/// Diagonal 0/1 projection: the subset `S` of `{0, …, n-1}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagProjection {
    degree: usize,
    set: BTreeSet<usize>,
}

impl DiagProjection {
    pub fn from_set(degree: usize, set: BTreeSet<usize>) -> Result<Self> {
        if let Some(&max) = set.iter().next_back() {
            if max >= degree {
                return Err(Error::IndexOutOfRange {
                    index: max,
                    bound: degree,
                });
            }
        }
        Ok(DiagProjection { degree, set })
    }

    pub fn from_indices(degree: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        Self::from_set(degree, indices.into_iter().collect())
    }

    pub fn full(degree: usize) -> Self {
        DiagProjection {
            degree,
            set: (0..degree).collect(),
        }
    }

    pub fn empty(degree: usize) -> Self {
        DiagProjection {
            degree,
            set: BTreeSet::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn contains(&self, i: usize) -> bool {
        self.set.contains(&i)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.set.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.set.len()
    }

    pub fn is_empty(&self) -> bool {
        self.set.is_empty()
    }

    pub fn trace(&self) -> Frac {
        Frac::new(self.set.len() as i64, self.degree as i64)
    }

    pub fn complement(&self) -> DiagProjection {
        DiagProjection {
            degree: self.degree,
            set: (0..self.degree).filter(|i| !self.set.contains(i)).collect(),
        }
    }

    /// The conjugated projection `p ∘ self ∘ p⁻¹`, i.e. the image set `p(S)`.
    pub fn conjugate_by(&self, p: &Permutation) -> Result<DiagProjection> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: p.degree(),
                right: self.degree,
            });
        }
        Ok(DiagProjection {
            degree: self.degree,
            set: self.set.iter().map(|&i| p.apply(i)).collect(),
        })
    }

    pub fn symmetric_difference_size(&self, other: &DiagProjection) -> usize {
        self.set.symmetric_difference(&other.set).count()
    }

    pub fn union_with(&self, other: &DiagProjection) -> DiagProjection {
        DiagProjection {
            degree: self.degree,
            set: self.set.union(&other.set).copied().collect(),
        }
    }
}

/// Anything representable as an n×n 0/1 matrix with at most one entry per
/// row; `row_entry(i)` is the column of the 1 in row `i`.
pub trait ZeroOneRows {
    fn degree(&self) -> usize;
    fn rows(&self) -> Vec<Option<usize>>;
}

impl ZeroOneRows for Permutation {
    fn degree(&self) -> usize {
        Permutation::degree(self)
    }

    fn rows(&self) -> Vec<Option<usize>> {
        // Row i holds its 1 in column p⁻¹(i).
        let mut rows = vec![None; self.degree()];
        for (j, &i) in self.images().iter().enumerate() {
            rows[i] = Some(j);
        }
        rows
    }
}

impl ZeroOneRows for PartialPermutation {
    fn degree(&self) -> usize {
        PartialPermutation::degree(self)
    }

    fn rows(&self) -> Vec<Option<usize>> {
        let mut rows = vec![None; self.degree()];
        for (j, v) in (0..self.degree()).map(|j| (j, self.get(j))) {
            if let Some(i) = v {
                rows[i] = Some(j);
            }
        }
        rows
    }
}

impl ZeroOneRows for DiagProjection {
    fn degree(&self) -> usize {
        DiagProjection::degree(self)
    }

    fn rows(&self) -> Vec<Option<usize>> {
        (0..self.degree()).map(|i| self.contains(i).then_some(i)).collect()
    }
}

/// Row-counting Hamming distance: the fraction of rows on which the two
/// 0/1 row patterns differ. For two permutations this equals the ordinary
/// Hamming distance; for two projections it is `|S₁ Δ S₂| / n`.
pub fn hamming_rows<A: ZeroOneRows + ?Sized, B: ZeroOneRows + ?Sized>(
    x: &A,
    y: &B,
) -> Result<Frac> {
    if x.degree() != y.degree() {
        return Err(Error::DegreeMismatch {
            left: x.degree(),
            right: y.degree(),
        });
    }
    let differing = x
        .rows()
        .iter()
        .zip(y.rows())
        .filter(|(a, b)| **a != *b)
        .count();
    Ok(Frac::new(differing as i64, x.degree() as i64))
}

/// Glue permutations along a partition of the domain: the result agrees with
/// `u_i` on `p_i`. Fails if the `p_i` do not partition the domain or if two
/// glued images collide, reporting the first offending index.
pub fn piecewise_glue(
    degree: usize,
    pieces: &[(DiagProjection, Permutation)],
) -> Result<Permutation> {
    let mut images: Vec<Option<usize>> = vec![None; degree];
    let mut covered = vec![false; degree];
    let mut hit = vec![false; degree];
    for (proj, u) in pieces {
        if proj.degree() != degree || u.degree() != degree {
            return Err(Error::DegreeMismatch {
                left: proj.degree().max(u.degree()),
                right: degree,
            });
        }
        for j in proj.indices() {
            if covered[j] {
                return Err(Error::DomainsDoNotPartition { index: j });
            }
            covered[j] = true;
            let v = u.apply(j);
            if hit[v] {
                return Err(Error::ImagesOverlap { index: v });
            }
            hit[v] = true;
            images[j] = Some(v);
        }
    }
    if let Some(j) = covered.iter().position(|c| !c) {
        return Err(Error::DomainsDoNotPartition { index: j });
    }
    Permutation::from_images(images.into_iter().map(|v| v.expect("covered")).collect())
}

/// View of a permutation of degree `n * r` as an r×r block matrix of
/// degree-n pieces, under the index convention `global = coarse * r + fine`.
pub struct BlockView<'a> {
    base: &'a Permutation,
    n: usize,
    r: usize,
}

impl<'a> BlockView<'a> {
    pub fn new(base: &'a Permutation, n: usize, r: usize) -> Result<Self> {
        if n.checked_mul(r) != Some(base.degree()) || n == 0 || r == 0 {
            return Err(Error::BlockShape {
                degree: base.degree(),
                n,
                r,
            });
        }
        Ok(BlockView { base, n, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// The (i, j) block as a partial permutation of degree n:
    /// `piece(i,j)(w) = v` exactly when `base(w*r + j) = v*r + i`.
    pub fn piece(&self, i: usize, j: usize) -> Result<PartialPermutation> {
        if i >= self.r || j >= self.r {
            return Err(Error::IndexOutOfRange {
                index: i.max(j),
                bound: self.r,
            });
        }
        let map = (0..self.n)
            .map(|w| {
                let img = self.base.apply(w * self.r + j);
                (img % self.r == i).then(|| img / self.r)
            })
            .collect();
        PartialPermutation::from_map(map)
    }

    /// Rebuild the underlying permutation from all its pieces.
    pub fn reassemble(&self) -> Result<Permutation> {
        let mut images = vec![0; self.n * self.r];
        for j in 0..self.r {
            for i in 0..self.r {
                let piece = self.piece(i, j)?;
                for w in 0..self.n {
                    if let Some(v) = piece.get(w) {
                        images[w * self.r + j] = v * self.r + i;
                    }
                }
            }
        }
        Permutation::from_images(images)
    }
}
