//! Cycle-pair graphs, their spectra, and exact Cheeger certificates.
//!
//! For two n-cycles `a, c` the 4-regular multigraph `G_{a,c}` has adjacency
//! `M_a + M_aᵀ + M_c + M_cᵀ`. The vertex-set boundary used throughout counts
//! each generator family once, `|∂S| = |S Δ a(S)| + |S Δ c(S)|`, which makes
//! the identity `d_H(p, apa*) + d_H(p, cpc*) = |∂S|/n` hold exactly; the
//! doubled multigraph count is exposed separately as `boundary_degree`.

use nalgebra::DMatrix;
use num_traits::ToPrimitive;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::frac::Frac;
use crate::perm::Permutation;
use crate::piece::DiagProjection;

/// Eigenvalue tolerance for the floating-point side of the hybrid: spectra
/// are float, Cheeger constants and condition (1) are exact rationals.
pub const SPECTRAL_TOL: f64 = 1e-9;

/// Largest degree for which exhaustive subset enumeration is allowed.
pub const EXACT_LIMIT: usize = 20;

#[derive(Clone, Debug)]
pub struct CyclePairGraph {
    a: Permutation,
    c: Permutation,
    adjacency: Vec<Vec<u8>>,
}

impl CyclePairGraph {
    pub fn degree(&self) -> usize {
        self.a.degree()
    }

    pub fn generator_a(&self) -> &Permutation {
        &self.a
    }

    pub fn generator_c(&self) -> &Permutation {
        &self.c
    }

    pub fn adjacency(&self) -> &[Vec<u8>] {
        &self.adjacency
    }

    /// Short content hash of the adjacency matrix, for diagnostics.
    pub fn matrix_hash(&self) -> String {
        let mut hasher = Sha256::new();
        for row in &self.adjacency {
            hasher.update(row);
        }
        let digest = hasher.finalize();
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Build `G_{a,c}` from two single n-cycles.
pub fn build_graph(a: &Permutation, c: &Permutation) -> Result<CyclePairGraph> {
    let n = a.degree();
    if c.degree() != n {
        return Err(Error::DegreeMismatch {
            left: n,
            right: c.degree(),
        });
    }
    if n < 2 {
        return Err(Error::DegreeTooSmall { degree: n, min: 2 });
    }
    if !a.is_n_cycle() || !c.is_n_cycle() {
        return Err(Error::NotACycle { expected: n });
    }
    let mut adjacency = vec![vec![0u8; n]; n];
    for p in [a, c] {
        for j in 0..n {
            let i = p.apply(j);
            adjacency[i][j] += 1;
            adjacency[j][i] += 1;
        }
    }
    Ok(CyclePairGraph {
        a: a.clone(),
        c: c.clone(),
        adjacency,
    })
}

#[derive(Clone, Debug)]
pub struct Spectrum {
    /// Adjacency eigenvalues in descending order.
    pub eigenvalues: Vec<f64>,
    pub tolerance: f64,
}

impl Spectrum {
    pub fn lambda1(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn lambda2(&self) -> f64 {
        self.eigenvalues[1]
    }

    pub fn max_abs_nontrivial(&self) -> f64 {
        self.eigenvalues[1..]
            .iter()
            .fold(0.0f64, |acc, v| acc.max(v.abs()))
    }

    /// Certified lower bound on the Cheeger constant, `(4 - λ₂)/2` minus the
    /// spectral tolerance.
    pub fn cheeger_lower_bound(&self) -> f64 {
        (4.0 - self.lambda2()) / 2.0 - self.tolerance
    }
}

/// Full symmetric eigensolve of the adjacency matrix.
pub fn spectrum(g: &CyclePairGraph) -> Result<Spectrum> {
    let n = g.degree();
    let m = DMatrix::from_fn(n, n, |i, j| g.adjacency[i][j] as f64);
    let eigen = nalgebra::linalg::SymmetricEigen::try_new(m, 1e-13, 100_000)
        .ok_or_else(|| Error::EigenFailed {
            matrix_hash: g.matrix_hash(),
        })?;
    let mut eigenvalues: Vec<f64> = eigen.eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(|x, y| y.partial_cmp(x).expect("no NaN eigenvalues"));
    if (eigenvalues[0] - 4.0).abs() > SPECTRAL_TOL {
        return Err(Error::EigenFailed {
            matrix_hash: g.matrix_hash(),
        });
    }
    Ok(Spectrum {
        eigenvalues,
        tolerance: SPECTRAL_TOL,
    })
}

/// `|S Δ a(S)| + |S Δ c(S)|` for a subset given as a bitmask.
fn boundary_mask(g: &CyclePairGraph, mask: u64) -> u32 {
    let mut total = 0;
    for p in [&g.a, &g.c] {
        let mut image = 0u64;
        let mut rest = mask;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            image |= 1 << p.apply(i);
            rest &= rest - 1;
        }
        total += (mask ^ image).count_ones();
    }
    total
}

/// Boundary edge count `|S Δ a(S)| + |S Δ c(S)|` (each generator family
/// counted once).
pub fn boundary_count(g: &CyclePairGraph, s: &DiagProjection) -> Result<usize> {
    if s.degree() != g.degree() {
        return Err(Error::DegreeMismatch {
            left: s.degree(),
            right: g.degree(),
        });
    }
    let a_image = s.conjugate_by(&g.a)?;
    let c_image = s.conjugate_by(&g.c)?;
    Ok(s.symmetric_difference_size(&a_image) + s.symmetric_difference_size(&c_image))
}

/// Strict multigraph boundary where both generator families of the edge list
/// are counted, i.e. twice `boundary_count`.
pub fn boundary_degree(g: &CyclePairGraph, s: &DiagProjection) -> Result<usize> {
    Ok(2 * boundary_count(g, s)?)
}

#[derive(Clone, Debug)]
pub struct CheegerResult {
    pub value: Frac,
    /// A minimising subset (the first one in bitmask order).
    pub witness: DiagProjection,
}

/// Exact `h(G) = min_{0 < |S| ≤ n/2} |∂S| / |S|` by subset enumeration.
pub fn cheeger_exact(g: &CyclePairGraph) -> Result<CheegerResult> {
    let n = g.degree();
    if n > EXACT_LIMIT {
        return Err(Error::DegreeTooLarge {
            degree: n,
            limit: EXACT_LIMIT,
        });
    }
    let mut best_boundary = u64::MAX;
    let mut best_size = 1u64;
    let mut best_mask = 0u64;
    for mask in 1u64..(1 << n) {
        let size = mask.count_ones() as u64;
        if 2 * size > n as u64 {
            continue;
        }
        let boundary = boundary_mask(g, mask) as u64;
        // boundary/size < best_boundary/best_size, by cross-multiplication.
        if best_mask == 0 || boundary * best_size < best_boundary * size {
            best_boundary = boundary;
            best_size = size;
            best_mask = mask;
        }
    }
    let witness = DiagProjection::from_indices(
        n,
        (0..n).filter(|i| best_mask >> i & 1 == 1),
    )?;
    Ok(CheegerResult {
        value: Frac::new(best_boundary as i64, best_size as i64),
        witness,
    })
}

/// Evaluate condition (1) for a single projection: `λ Tr(p) <
/// d_H(p, apa*) + d_H(p, cpc*)`, exactly in rationals.
pub fn expander_condition(
    g: &CyclePairGraph,
    lambda: Frac,
    p: &DiagProjection,
) -> Result<bool> {
    if p.is_empty() {
        return Err(Error::EmptyProjection);
    }
    if p.trace() >= Frac::new(1, 2) {
        return Err(Error::TraceTooLarge {
            trace: p.trace().to_string(),
        });
    }
    let boundary = Frac::new(boundary_count(g, p)? as i64, g.degree() as i64);
    Ok(lambda * p.trace() < boundary)
}

/// Outcome of checking condition (1) over all admissible projections.
#[derive(Clone, Debug)]
pub enum ConditionOutcome {
    /// Exhaustively verified.
    HoldsExact,
    /// Certified through `h ≥ (4 - λ₂)/2 > λ`.
    HoldsSpectral { lambda2: f64, certified_lower: f64 },
    /// Exhaustive search found a violating projection.
    Violated { witness: DiagProjection },
    /// The spectral certificate was not strong enough to decide.
    Inconclusive { lambda2: f64, certified_lower: f64 },
}

impl ConditionOutcome {
    /// `Some(true)` when the condition is known to hold, `Some(false)` when
    /// a witness violates it, `None` when undecided.
    pub fn holds(&self) -> Option<bool> {
        match self {
            ConditionOutcome::HoldsExact | ConditionOutcome::HoldsSpectral { .. } => Some(true),
            ConditionOutcome::Violated { .. } => Some(false),
            ConditionOutcome::Inconclusive { .. } => None,
        }
    }
}

/// Check condition (1) for all projections with trace below 1/2: exhaustive
/// for degrees up to `EXACT_LIMIT`, spectral certification beyond.
pub fn expander_condition_all(g: &CyclePairGraph, lambda: Frac) -> Result<ConditionOutcome> {
    let n = g.degree();
    if n <= EXACT_LIMIT {
        for mask in 1u64..(1 << n) {
            let size = mask.count_ones() as i64;
            if 2 * size >= n as i64 {
                continue;
            }
            let boundary = boundary_mask(g, mask) as i64;
            if lambda * Frac::new(size, n as i64) >= Frac::new(boundary, n as i64) {
                let witness =
                    DiagProjection::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1))?;
                return Ok(ConditionOutcome::Violated { witness });
            }
        }
        Ok(ConditionOutcome::HoldsExact)
    } else {
        let s = spectrum(g)?;
        let certified = s.cheeger_lower_bound();
        let lam = lambda.to_f64().expect("finite rational");
        if lam < certified {
            Ok(ConditionOutcome::HoldsSpectral {
                lambda2: s.lambda2(),
                certified_lower: certified,
            })
        } else {
            Ok(ConditionOutcome::Inconclusive {
                lambda2: s.lambda2(),
                certified_lower: certified,
            })
        }
    }
}
