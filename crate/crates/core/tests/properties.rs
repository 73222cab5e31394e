use cdpoly::real_roots::{isolate_nonnegative_roots, refine_root, sturm_count};
use cdpoly::{AlgPoly, Algebra, CentralPoly, Rational};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-8i64..=8, 1i64..=5).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn gammas() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3]), 0..=3)
}

fn element_coeffs(dim: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), dim)
}

/// An algebra together with a few coefficient vectors of matching length.
fn algebra_with(count: usize) -> impl Strategy<Value = (Vec<i64>, Vec<Vec<Rational>>)> {
    gammas().prop_flat_map(move |g| {
        let dim = 1 << g.len();
        (Just(g), prop::collection::vec(element_coeffs(dim), count))
    })
}

fn diagonal_norm(gammas: &[i64], coeffs: &[Rational]) -> Rational {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let weight: i64 = (0..gammas.len())
                .filter(|k| i >> k & 1 == 1)
                .map(|k| -gammas[k])
                .product();
            c * c * Rational::from_integer(weight.into())
        })
        .sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_matches_diagonal_form((g, xs) in algebra_with(1)) {
        let alg = Algebra::<Rational>::from_i64s(&g).unwrap();
        let a = alg.element(xs[0].clone()).unwrap();
        prop_assert_eq!(a.norm().unwrap(), diagonal_norm(&g, &xs[0]));
    }

    #[test]
    fn fast_alternating_evaluation_matches_words((g, xs) in algebra_with(5)) {
        let alg = Algebra::<Rational>::from_i64s(&g).unwrap();
        let f = AlgPoly::from_coeff_vectors(&alg, xs[..4].to_vec()).unwrap();
        let lam = alg.element(xs[4].clone()).unwrap();
        prop_assert_eq!(f.eval_alternating(&lam).unwrap(), f.eval_alternating_literal(&lam).unwrap());
    }

    #[test]
    fn isolating_intervals_are_disjoint_and_counted(
        coeffs in prop::collection::vec(rational(), 1..=7),
    ) {
        let p = CentralPoly::new(coeffs);
        prop_assume!(!p.is_zero());
        let found = isolate_nonnegative_roots(&p).unwrap();
        for pair in found.windows(2) {
            prop_assert!(pair[0].hi() <= pair[1].lo());
        }
        for iv in &found {
            prop_assert!(!iv.hi().is_negative());
            let sq = iv.squarefree();
            match iv.exact_value() {
                Some(r) => prop_assert!(p.eval(r).is_zero()),
                None => {
                    prop_assert_eq!(sturm_count(sq, iv.lo(), iv.hi()).unwrap(), 1);
                    let narrow = refine_root(iv, &Rational::new(1.into(), BigInt::from(1u64 << 40)));
                    prop_assert!(narrow.lo() >= iv.lo() && narrow.hi() <= iv.hi());
                    prop_assert_eq!(sturm_count(sq, narrow.lo(), narrow.hi()).unwrap(), 1);
                }
            }
        }
        prop_assert_eq!(isolate_nonnegative_roots(&p).unwrap(), found);
    }
}
