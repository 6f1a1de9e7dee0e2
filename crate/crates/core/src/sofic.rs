//! Finite-level sofic representations: generator images in a symmetric
//! group, trace defects over short words, amplification, weighted direct
//! sums, cutting by commuting projections and a conjugacy-search metric.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::frac::{to_big, Frac};
use crate::perm::Permutation;
use crate::piece::DiagProjection;

/// One letter of a word: a generator index, possibly inverted.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    fn inv(self) -> Letter {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }
}

/// A word in the generators and their inverses.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    /// Cancel adjacent inverse pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last().is_some_and(|&last| last == l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| w[0] != w[1].inv())
    }

    /// Parse "a b^-1 a" against a generator list.
    pub fn parse(s: &str, generators: &[String]) -> Result<Word> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let (name, inverse) = match tok.strip_suffix("^-1") {
                Some(base) => (base, true),
                None => (tok, false),
            };
            let gen = generators
                .iter()
                .position(|g| g == name)
                .ok_or_else(|| Error::UnknownGenerator {
                    name: name.to_string(),
                })?;
            letters.push(Letter { gen, inverse });
        }
        Ok(Word(letters))
    }

    pub fn display(&self, generators: &[String]) -> String {
        self.0
            .iter()
            .map(|l| {
                if l.inverse {
                    format!("{}^-1", generators[l.gen])
                } else {
                    generators[l.gen].clone()
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A finite-level sofic representation: one permutation of common degree per
/// generator, with optional relator words.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FiniteSoficRep {
    generators: Vec<String>,
    images: Vec<Permutation>,
    relators: Vec<Word>,
}

impl FiniteSoficRep {
    pub fn new(
        generators: Vec<String>,
        images: Vec<Permutation>,
        relators: Vec<Word>,
    ) -> Result<Self> {
        if generators.len() != images.len() {
            return Err(Error::Parse(format!(
                "{} generators but {} images",
                generators.len(),
                images.len()
            )));
        }
        if generators.is_empty() {
            return Err(Error::Parse("a representation needs a generator".into()));
        }
        let degree = images[0].degree();
        for img in &images {
            if img.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: img.degree(),
                });
            }
        }
        for rel in &relators {
            for l in &rel.0 {
                if l.gen >= generators.len() {
                    return Err(Error::UnknownGenerator {
                        name: format!("#{}", l.gen),
                    });
                }
            }
        }
        Ok(FiniteSoficRep {
            generators,
            images,
            relators,
        })
    }

    pub fn degree(&self) -> usize {
        self.images[0].degree()
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn image_of(&self, name: &str) -> Result<&Permutation> {
        let idx = self
            .generators
            .iter()
            .position(|g| g == name)
            .ok_or_else(|| Error::UnknownGenerator {
                name: name.to_string(),
            })?;
        Ok(&self.images[idx])
    }

    /// Product of the letter images, rightmost applied first.
    pub fn evaluate_word(&self, word: &Word) -> Result<Permutation> {
        let mut out = Permutation::identity(self.degree());
        for l in &word.0 {
            if l.gen >= self.images.len() {
                return Err(Error::UnknownGenerator {
                    name: format!("#{}", l.gen),
                });
            }
            let img = if l.inverse {
                self.images[l.gen].inverse()
            } else {
                self.images[l.gen].clone()
            };
            out = out.compose(&img)?;
        }
        Ok(out)
    }

    /// A word is treated as trivial if it shrinks to the empty word under
    /// free reduction plus removal of whole relator occurrences (including
    /// inverses and cyclic rotations). This detects triviality exactly for
    /// power relators such as an involutive generator.
    pub fn word_is_trivial(&self, word: &Word) -> bool {
        let variants = self.relator_variants();
        let mut cur = word.free_reduce();
        loop {
            if cur.is_empty() {
                return true;
            }
            let mut shrunk = None;
            'outer: for rel in &variants {
                if rel.is_empty() || rel.len() > cur.len() {
                    continue;
                }
                for start in 0..=cur.len() - rel.len() {
                    if cur.0[start..start + rel.len()] == rel.0[..] {
                        let mut next = cur.0[..start].to_vec();
                        next.extend_from_slice(&cur.0[start + rel.len()..]);
                        shrunk = Some(Word(next).free_reduce());
                        break 'outer;
                    }
                }
            }
            match shrunk {
                Some(next) => cur = next,
                None => return false,
            }
        }
    }

    fn relator_variants(&self) -> Vec<Word> {
        let mut out = Vec::new();
        for rel in &self.relators {
            let reduced = rel.free_reduce();
            for base in [reduced.clone(), reduced.inverse()] {
                let m = base.len();
                for rot in 0..m.max(1) {
                    let mut letters = base.0[rot..].to_vec();
                    letters.extend_from_slice(&base.0[..rot]);
                    let w = Word(letters);
                    if !out.contains(&w) {
                        out.push(w);
                    }
                }
            }
        }
        out
    }

    /// Max fixed-point fraction over nontrivial reduced words of length at
    /// most `max_len` (trivial-mod-relators words excluded). Zero means a
    /// perfect `max_len`-local sofic approximation.
    pub fn trace_defect(&self, max_len: usize) -> Result<Frac> {
        let mut worst = Frac::new(0, 1);
        for word in reduced_words(self.generators.len(), max_len) {
            if !self.relators.is_empty() && self.word_is_trivial(&word) {
                continue;
            }
            let img = self.evaluate_word(&word)?;
            worst = worst.max(img.fixed_fraction());
        }
        Ok(worst)
    }

    /// Tensor every image with an identity block.
    pub fn amplify(&self, r: usize) -> FiniteSoficRep {
        FiniteSoficRep {
            generators: self.generators.clone(),
            images: self.images.iter().map(|p| p.tensor_identity(r)).collect(),
            relators: self.relators.clone(),
        }
    }

    /// True iff every generator image maps the set onto itself.
    pub fn commutes_with(&self, p: &DiagProjection) -> Result<bool> {
        if p.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                left: p.degree(),
                right: self.degree(),
            });
        }
        for img in &self.images {
            if p.conjugate_by(img)? != *p {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Restrict to an invariant set and relabel by the order-preserving
    /// bijection onto `{0, …, |S|-1}`.
    pub fn cut(&self, p: &DiagProjection) -> Result<FiniteSoficRep> {
        if p.is_empty() {
            return Err(Error::EmptyProjection);
        }
        if !self.commutes_with(p)? {
            let offender = self
                .images
                .iter()
                .position(|img| p.conjugate_by(img).map(|q| q != *p).unwrap_or(true))
                .unwrap_or(0);
            return Err(Error::NonCommutingProjection {
                generator: self.generators[offender].clone(),
            });
        }
        let indices: Vec<usize> = p.indices().collect();
        let rank: BTreeMap<usize, usize> =
            indices.iter().enumerate().map(|(k, &v)| (v, k)).collect();
        let images = self
            .images
            .iter()
            .map(|img| {
                Permutation::from_images(
                    indices.iter().map(|&v| rank[&img.apply(v)]).collect(),
                )
                .expect("restriction of a bijection to an invariant set")
            })
            .collect();
        Ok(FiniteSoficRep {
            generators: self.generators.clone(),
            images,
            relators: self.relators.clone(),
        })
    }
}

/// All freely reduced nontrivial words of length ≤ `max_len`, in shortlex
/// order with the alphabet `g₀ < g₀⁻¹ < g₁ < g₁⁻¹ < …`.
pub fn reduced_words(num_generators: usize, max_len: usize) -> Vec<Word> {
    let alphabet: Vec<Letter> = (0..num_generators)
        .flat_map(|gen| {
            [
                Letter {
                    gen,
                    inverse: false,
                },
                Letter { gen, inverse: true },
            ]
        })
        .collect();
    let mut out = Vec::new();
    let mut frontier: Vec<Word> = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &l in &alphabet {
                if w.0.last().is_some_and(|&last| last == l.inv()) {
                    continue;
                }
                let mut letters = w.0.clone();
                letters.push(l);
                next.push(Word(letters));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// The word-weight scheme of the metric: shortlex enumeration with weights
/// `4^{-i}` (1-based index).
#[derive(Clone, Debug)]
pub struct WordWeightScheme {
    num_generators: usize,
    max_len: usize,
    words: Vec<Word>,
}

impl WordWeightScheme {
    pub fn shortlex(num_generators: usize, max_len: usize) -> WordWeightScheme {
        WordWeightScheme {
            num_generators,
            max_len,
            words: reduced_words(num_generators, max_len),
        }
    }

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn weight(&self, index: usize) -> BigRational {
        let four = BigRational::from_integer(4.into());
        BigRational::from_integer(1.into()) / four.pow(index as i32 + 1)
    }

    /// Upper bound on the truncated tail of the squared objective:
    /// `Σ_{i>K} 4^{-i} · 4 = (4/3) · 4^{-K}`.
    pub fn tail_bound_squared(&self) -> BigRational {
        let four = BigRational::from_integer(4.into());
        four.clone() / (BigRational::from_integer(3.into()) * four.pow(self.words.len() as i32))
    }
}

/// A weighted direct sum together with the projection onto its first block.
#[derive(Clone, Debug)]
pub struct ConvexCombination {
    pub rep: FiniteSoficRep,
    /// Invariant set carrying the first summand; its trace is exactly λ.
    pub first_block: DiagProjection,
    /// Amplification factors applied to the two inputs.
    pub factors: (usize, usize),
}

/// Weighted direct sum with rational weight `λ = r/(r+s)` in lowest terms:
/// amplify the first input by `r·n₂`, the second by `s·n₁`, and take the
/// generator-wise direct sum (degree `n₁n₂(r+s)`).
pub fn convex_combine(
    rep1: &FiniteSoficRep,
    rep2: &FiniteSoficRep,
    lambda: Frac,
) -> Result<ConvexCombination> {
    if rep1.generators != rep2.generators {
        return Err(Error::Parse(
            "weighted sums need identical generator lists".into(),
        ));
    }
    if lambda < Frac::new(0, 1) || lambda > Frac::new(1, 1) {
        return Err(Error::LambdaOutOfRange {
            value: lambda.to_string(),
        });
    }
    let n1 = rep1.degree();
    let n2 = rep2.degree();
    let r = *lambda.numer() as usize;
    let s = (*lambda.denom() - *lambda.numer()) as usize;
    if s == 0 {
        let rep = rep1.amplify(n2);
        let first_block = DiagProjection::full(rep.degree());
        return Ok(ConvexCombination {
            rep,
            first_block,
            factors: (n2, 0),
        });
    }
    if r == 0 {
        let rep = rep2.amplify(n1);
        let first_block = DiagProjection::empty(rep.degree());
        return Ok(ConvexCombination {
            rep,
            first_block,
            factors: (0, n1),
        });
    }
    let left = rep1.amplify(r * n2);
    let right = rep2.amplify(s * n1);
    let images = left
        .images
        .iter()
        .zip(&right.images)
        .map(|(a, b)| a.direct_sum(b))
        .collect();
    let mut relators = rep1.relators.clone();
    for rel in &rep2.relators {
        if !relators.contains(rel) {
            relators.push(rel.clone());
        }
    }
    let rep = FiniteSoficRep {
        generators: rep1.generators.clone(),
        images,
        relators,
    };
    let first_block = DiagProjection::from_indices(rep.degree(), 0..left.degree())?;
    Ok(ConvexCombination {
        rep,
        first_block,
        factors: (r * n2, s * n1),
    })
}

/// Outcome of the conjugacy search: an upper bound on the metric.
#[derive(Clone, Debug)]
pub struct DistanceBound {
    /// Exact squared objective `Σᵢ 4^{-i} ‖Θ₁(gᵢ) - uΘ₂(gᵢ)u*‖₂²` at the
    /// best conjugator found.
    pub squared: BigRational,
    /// Certified bound on the part of the squared objective the truncation
    /// cannot see.
    pub tail_bound_squared: BigRational,
    pub conjugator: Permutation,
    pub evaluations: u64,
}

impl DistanceBound {
    /// Floating-point square root of the exact squared objective.
    pub fn value(&self) -> f64 {
        self.squared.to_f64().unwrap_or(f64::NAN).sqrt()
    }
}

fn objective(
    scheme: &WordWeightScheme,
    left_words: &[Permutation],
    right_words: &[Permutation],
    u: &Permutation,
) -> BigRational {
    let mut total = BigRational::zero();
    let u_inv = u.inverse();
    for (i, (lhs, rhs)) in left_words.iter().zip(right_words).enumerate() {
        let conj = u.compose(rhs).unwrap().compose(&u_inv).unwrap();
        let d = lhs.hamming(&conj).unwrap();
        if !d.is_zero() {
            // ‖p - q‖₂² = 2 d_H(p, q).
            total += scheme.weight(i) * to_big(d) * BigRational::from_integer(2.into());
        }
    }
    total
}

/// Upper-bound search for the word metric between two representations of
/// equal degree: random restarts plus steepest transposition descent, with a
/// budget counted in objective evaluations. The identity conjugator is always
/// tried first.
pub fn rep_distance_upper<R: Rng + ?Sized>(
    rep1: &FiniteSoficRep,
    rep2: &FiniteSoficRep,
    scheme: &WordWeightScheme,
    budget: u64,
    rng: &mut R,
) -> Result<DistanceBound> {
    if rep1.degree() != rep2.degree() {
        return Err(Error::DegreeMismatch {
            left: rep1.degree(),
            right: rep2.degree(),
        });
    }
    if rep1.generators != rep2.generators {
        return Err(Error::Parse(
            "distance needs identical generator lists".into(),
        ));
    }
    let n = rep1.degree();
    let left_words: Vec<Permutation> = scheme
        .words()
        .iter()
        .map(|w| rep1.evaluate_word(w))
        .collect::<Result<_>>()?;
    let right_words: Vec<Permutation> = scheme
        .words()
        .iter()
        .map(|w| rep2.evaluate_word(w))
        .collect::<Result<_>>()?;

    let mut evaluations = 0u64;
    let eval = |u: &Permutation, evaluations: &mut u64| {
        *evaluations += 1;
        objective(scheme, &left_words, &right_words, u)
    };

    let mut current = Permutation::identity(n);
    let mut current_obj = eval(&current, &mut evaluations);
    let mut best = current.clone();
    let mut best_obj = current_obj.clone();

    while evaluations < budget && !best_obj.is_zero() {
        // Steepest descent over right-multiplied transpositions.
        let mut improved: Option<(Permutation, BigRational)> = None;
        'neighbours: for a in 0..n {
            for b in a + 1..n {
                if evaluations >= budget {
                    break 'neighbours;
                }
                let tau = Permutation::transposition(n, a, b)?;
                let cand = current.compose(&tau)?;
                let obj = eval(&cand, &mut evaluations);
                if obj < current_obj
                    && improved.as_ref().is_none_or(|(_, cur)| obj < *cur)
                {
                    improved = Some((cand, obj));
                }
            }
        }
        match improved {
            Some((next, obj)) => {
                current = next;
                current_obj = obj;
                if current_obj < best_obj {
                    best = current.clone();
                    best_obj = current_obj.clone();
                }
            }
            None => {
                // Local minimum: restart.
                if evaluations >= budget {
                    break;
                }
                current = Permutation::random(n, rng);
                current_obj = eval(&current, &mut evaluations);
                if current_obj < best_obj {
                    best = current.clone();
                    best_obj = current_obj.clone();
                }
            }
        }
    }

    Ok(DistanceBound {
        squared: best_obj,
        tail_bound_squared: scheme.tail_bound_squared(),
        conjugator: best,
        evaluations,
    })
}

/// On-disk form of a representation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RepFile {
    pub generators: Vec<String>,
    pub degree: usize,
    pub images: BTreeMap<String, Vec<usize>>,
    #[serde(default)]
    pub relators: Vec<String>,
}

impl RepFile {
    pub fn from_rep(rep: &FiniteSoficRep) -> RepFile {
        RepFile {
            generators: rep.generators.clone(),
            degree: rep.degree(),
            images: rep
                .generators
                .iter()
                .zip(rep.images())
                .map(|(g, p)| (g.clone(), p.images().to_vec()))
                .collect(),
            relators: rep
                .relators
                .iter()
                .map(|w| w.display(&rep.generators))
                .collect(),
        }
    }

    pub fn into_rep(self) -> Result<FiniteSoficRep> {
        let mut images = Vec::new();
        for g in &self.generators {
            let raw = self
                .images
                .get(g)
                .ok_or_else(|| Error::UnknownGenerator { name: g.clone() })?;
            let p = Permutation::from_images(raw.clone())?;
            if p.degree() != self.degree {
                return Err(Error::DegreeMismatch {
                    left: p.degree(),
                    right: self.degree,
                });
            }
            images.push(p);
        }
        let relators = self
            .relators
            .iter()
            .map(|s| Word::parse(s, &self.generators))
            .collect::<Result<_>>()?;
        FiniteSoficRep::new(self.generators, images, relators)
    }
}

impl fmt::Display for FiniteSoficRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rep(degree {}, generators {})",
            self.degree(),
            self.generators.join(", ")
        )
    }
}
