//! Property tests for the algebraic identities the library leans on.

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use soficlab::frac::{frac, to_big, Frac};
use soficlab::interval::{embed_perm, interval_exchange, IntervalTranslationMap};
use soficlab::perm::Permutation;
use soficlab::piece::{hamming_rows, BlockView, DiagProjection, PartialPermutation};

fn perm_strategy(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<u64>(), n).prop_map(|keys| {
            let mut order: Vec<usize> = (0..keys.len()).collect();
            order.sort_by_key(|&i| (keys[i], i));
            Permutation::from_images(order).unwrap()
        })
    })
}

fn perm_pair(max_n: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (1..=max_n).prop_flat_map(|n| {
        let one = prop::collection::vec(any::<u64>(), n).prop_map(|keys| {
            let mut order: Vec<usize> = (0..keys.len()).collect();
            order.sort_by_key(|&i| (keys[i], i));
            Permutation::from_images(order).unwrap()
        });
        (one.clone(), one)
    })
}

fn perm_triple(max_n: usize) -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
    (1..=max_n).prop_flat_map(|n| {
        let one = prop::collection::vec(any::<u64>(), n).prop_map(|keys| {
            let mut order: Vec<usize> = (0..keys.len()).collect();
            order.sort_by_key(|&i| (keys[i], i));
            Permutation::from_images(order).unwrap()
        });
        (one.clone(), one.clone(), one)
    })
}

fn exchange_strategy() -> impl Strategy<Value = IntervalTranslationMap> {
    // Interval exchanges with cuts on the 1/12 grid.
    (prop::collection::btree_set(1u32..12, 0..7), any::<u64>()).prop_map(|(cuts, seed)| {
        let cuts: Vec<BigRational> = cuts
            .into_iter()
            .map(|c| BigRational::new((c as i64).into(), 12.into()))
            .collect();
        let k = cuts.len() + 1;
        let mut order: Vec<usize> = (0..k).collect();
        let mut state = seed;
        for i in (1..k).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            order.swap(i, j);
        }
        let sigma = Permutation::from_images(order).unwrap();
        interval_exchange(&cuts, &sigma).unwrap()
    })
}

proptest! {
    #[test]
    fn hamming_is_a_metric((p, q, r) in perm_triple(10)) {
        let d_pq = p.hamming(&q).unwrap();
        prop_assert_eq!(d_pq, q.hamming(&p).unwrap());
        prop_assert_eq!(d_pq == frac(0, 1), p == q);
        let d_pr = p.hamming(&r).unwrap();
        let d_rq = r.hamming(&q).unwrap();
        prop_assert!(d_pq <= d_pr + d_rq);
    }

    #[test]
    fn hamming_is_bi_invariant((p, q, r) in perm_triple(10)) {
        let d = p.hamming(&q).unwrap();
        prop_assert_eq!(r.compose(&p).unwrap().hamming(&r.compose(&q).unwrap()).unwrap(), d);
        prop_assert_eq!(p.compose(&r).unwrap().hamming(&q.compose(&r).unwrap()).unwrap(), d);
    }

    #[test]
    fn pieces_are_non_expansive((x, y, r) in perm_triple(9), mask in any::<u16>()) {
        let n = x.degree();
        let domain = DiagProjection::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1)).unwrap();
        let piece = PartialPermutation::restrict(&r, &domain).unwrap();
        let xp = PartialPermutation::from(&x);
        let yp = PartialPermutation::from(&y);
        let base = hamming_rows(&xp, &yp).unwrap();
        prop_assert!(hamming_rows(&piece.compose(&xp).unwrap(), &piece.compose(&yp).unwrap()).unwrap() <= base);
        prop_assert!(hamming_rows(&xp.compose(&piece).unwrap(), &yp.compose(&piece).unwrap()).unwrap() <= base);
    }

    #[test]
    fn block_row_sum_inequality(n in 1usize..=6, r in 1usize..=5, seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        let a = Permutation::random(n * r, &mut rng);
        let b = Permutation::random(n * r, &mut rng);
        let va = BlockView::new(&a, n, r).unwrap();
        let vb = BlockView::new(&b, n, r).unwrap();
        let mut sum = frac(0, 1);
        for i in 0..r {
            for j in 0..r {
                sum += hamming_rows(&va.piece(i, j).unwrap(), &vb.piece(i, j).unwrap()).unwrap();
            }
        }
        let lhs = frac(2, 1) * a.hamming(&b).unwrap();
        prop_assert!(lhs >= sum / frac(r as i64, 1), "2d_H = {lhs}, avg = {}", sum / frac(r as i64, 1));
    }

    #[test]
    fn block_reassembly_is_exact(n in 1usize..=6, r in 1usize..=4, seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
        let y = Permutation::random(n * r, &mut rng);
        let view = BlockView::new(&y, n, r).unwrap();
        prop_assert_eq!(view.reassemble().unwrap(), y);
    }

    #[test]
    fn tensor_is_isometric_homomorphism((p, q) in perm_pair(8), r in 1usize..=4) {
        prop_assert_eq!(
            p.tensor_identity(r).hamming(&q.tensor_identity(r)).unwrap(),
            p.hamming(&q).unwrap()
        );
        prop_assert_eq!(
            p.compose(&q).unwrap().tensor_identity(r),
            p.tensor_identity(r).compose(&q.tensor_identity(r)).unwrap()
        );
    }

    #[test]
    fn projection_conjugation_subadditive(x in perm_strategy(9), masks in prop::collection::vec(any::<u16>(), 1..5)) {
        // d_H(p_S, x p_S x*) ≤ Σ_j d_H(p_j, x p_j x*) for disjoint p_j.
        let n = x.degree();
        let mut taken = 0u16;
        let mut parts: Vec<DiagProjection> = Vec::new();
        for m in masks {
            let free = m & !taken & ((1u32 << n) as u16).wrapping_sub(1);
            taken |= free;
            parts.push(DiagProjection::from_indices(n, (0..n).filter(|i| free >> i & 1 == 1)).unwrap());
        }
        let union = parts.iter().fold(DiagProjection::empty(n), |acc, p| acc.union_with(p));
        let lhs = hamming_rows(&union, &union.conjugate_by(&x).unwrap()).unwrap();
        let rhs: Frac = parts
            .iter()
            .map(|p| hamming_rows(p, &p.conjugate_by(&x).unwrap()).unwrap())
            .sum();
        prop_assert!(lhs <= rhs);
    }

    #[test]
    fn itm_metric_and_associativity(u in exchange_strategy(), v in exchange_strategy(), w in exchange_strategy()) {
        let d_uv = u.hamming(&v);
        prop_assert_eq!(d_uv.clone(), v.hamming(&u));
        prop_assert_eq!(d_uv.is_zero(), u == v);
        let tri = u.hamming(&w) + w.hamming(&v);
        prop_assert!(d_uv <= tri);
        prop_assert_eq!(u.compose(&v).compose(&w), u.compose(&v.compose(&w)));
    }

    #[test]
    fn itm_text_round_trips(u in exchange_strategy()) {
        let text = u.to_string();
        let back: IntervalTranslationMap = text.parse().unwrap();
        prop_assert_eq!(back, u);
    }

    #[test]
    fn itm_image_tiles_and_inverse(u in exchange_strategy()) {
        // Canonical maps validate tiling on construction; the inverse
        // composes back to the identity.
        prop_assert_eq!(u.compose(&u.inverse()), IntervalTranslationMap::identity());
        prop_assert_eq!(u.inverse().compose(&u), IntervalTranslationMap::identity());
    }

    #[test]
    fn embedding_is_isometric((p, q) in perm_pair(10)) {
        prop_assert_eq!(
            embed_perm(&p).hamming(&embed_perm(&q)),
            to_big(p.hamming(&q).unwrap())
        );
    }

    #[test]
    fn tensor_nesting_flattens(p in perm_strategy(6), a in 1usize..=3, b in 1usize..=3) {
        prop_assert_eq!(
            p.tensor_identity(a).tensor_identity(b),
            p.tensor_identity(a * b)
        );
    }

    #[test]
    fn compose_is_associative((p, q, r) in perm_triple(10)) {
        prop_assert_eq!(
            p.compose(&q).unwrap().compose(&r).unwrap(),
            p.compose(&q.compose(&r).unwrap()).unwrap()
        );
    }
}
