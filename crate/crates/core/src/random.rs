//! Seeded random instances for property checks.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, Element};
use crate::error::Result;
use crate::poly::AlgPoly;
use crate::scalar::{Rational, Scalar};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub trait RandomScalar: Scalar {
    /// A small random value: short rationals in exact mode, uniform in
    /// `[-2, 2)` in float mode.
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl RandomScalar for Rational {
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        const DENOMS: [i64; 6] = [1, 1, 1, 2, 3, 4];
        let n = rng.gen_range(-6i64..=6);
        let d = DENOMS[rng.gen_range(0..DENOMS.len())];
        Rational::new(BigInt::from(n), BigInt::from(d))
    }
}

impl RandomScalar for f64 {
    fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.gen_range(-2.0..2.0)
    }
}

pub fn random_nonzero_scalar<S: RandomScalar, R: Rng + ?Sized>(rng: &mut R) -> S {
    loop {
        let s = S::random(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

pub fn random_element<S: RandomScalar, R: Rng + ?Sized>(
    rng: &mut R,
    algebra: &Algebra<S>,
) -> Element<S> {
    algebra
        .element((0..algebra.dim()).map(|_| S::random(rng)).collect())
        .expect("length matches dimension")
}

pub fn random_nonzero_element<S: RandomScalar, R: Rng + ?Sized>(
    rng: &mut R,
    algebra: &Algebra<S>,
) -> Element<S> {
    loop {
        let e = random_element(rng, algebra);
        if !e.is_zero() {
            return e;
        }
    }
}

/// Random polynomial of exactly the given degree.
pub fn random_poly<S: RandomScalar, R: Rng + ?Sized>(
    rng: &mut R,
    algebra: &Algebra<S>,
    degree: usize,
) -> AlgPoly<S> {
    let mut coeffs: Vec<_> = (0..degree).map(|_| random_element(rng, algebra)).collect();
    coeffs.push(random_nonzero_element(rng, algebra));
    AlgPoly::new(algebra.clone(), coeffs).expect("coefficients share the algebra")
}

/// Shifts the constant coefficient of `f` so that `lam` becomes an
/// alternating root.
pub fn force_alternating_root<S: Scalar>(f: &AlgPoly<S>, lam: &Element<S>) -> Result<AlgPoly<S>> {
    let value = f.eval_alternating(lam)?;
    let mut coeffs = f.coeffs().to_vec();
    if coeffs.is_empty() {
        coeffs.push(f.algebra().zero());
    }
    coeffs[0] = coeffs[0].sub(&value)?;
    AlgPoly::new(f.algebra().clone(), coeffs)
}

/// Doubling parameters drawn from a small set of nonzero integers with
/// mixed signs.
pub fn random_gammas<S: Scalar, R: Rng + ?Sized>(rng: &mut R, height: usize) -> Vec<S> {
    const CHOICES: [i64; 6] = [-3, -2, -1, 1, 2, 3];
    (0..height)
        .map(|_| S::from_i64(CHOICES[rng.gen_range(0..CHOICES.len())]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_generation_is_deterministic() {
        let alg = Algebra::<Rational>::from_i64s(&[-1, -1, -1]).unwrap();
        let a = random_poly(&mut seeded(7), &alg, 4);
        let b = random_poly(&mut seeded(7), &alg, 4);
        assert_eq!(a, b);
        assert_eq!(a.degree(), Some(4));
    }

    #[test]
    fn forced_root_is_a_root() {
        let alg = Algebra::<Rational>::from_i64s(&[-1, 2]).unwrap();
        let mut rng = seeded(3);
        let f = random_poly(&mut rng, &alg, 5);
        let lam = random_element(&mut rng, &alg);
        let g = force_alternating_root(&f, &lam).unwrap();
        assert!(g.eval_alternating(&lam).unwrap().is_zero());
    }
}
