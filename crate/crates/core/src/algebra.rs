//! Cayley-Dickson algebras of arbitrary tower height.
//!
//! An algebra is described by its doubling parameters `γ₁..γₙ` (innermost
//! first) and has dimension `2ⁿ`. Doubling `A` with parameter `γ` yields
//! `B = A ⊕ Av` with `v² = γ` and
//!
//! ```text
//! (a, b)·(c, d) = (ac + γ·d̄·b,  d·a + b·c̄)
//! conj(a, b)    = (ā, −b)
//! ```
//!
//! Many references use a different arrangement of the conjugates in this
//! formula. Multiplication tables built from those conventions do not agree
//! with the ones produced here; this module implements the formula above
//! verbatim and nothing else.
//!
//! Basis indexing: coefficient `i` belongs to the basis element whose bit `k`
//! is set exactly when it lies in the `v`-part of the `k`-th doubling,
//! counted from the innermost. So for a `2ⁿ`-dimensional algebra the lower
//! half of the coefficient vector is `A` and the upper half is `Av`, and
//! `e_{dim/2}` is the outermost `v`. For the quaternions `γ = [-1, -1]` the
//! basis is `[1, i, j, ij]`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Scalar, ToleranceContext};

/// Towers above this height would need more than 16M coefficients per
/// element.
pub const MAX_HEIGHT: usize = 24;

#[derive(Debug)]
struct Descriptor<S> {
    gammas: Vec<S>,
    dim: usize,
}

/// Shared handle to an algebra descriptor. Cheap to clone.
#[derive(Clone)]
pub struct Algebra<S: Scalar> {
    inner: Arc<Descriptor<S>>,
}

impl<S: Scalar> PartialEq for Algebra<S> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.gammas == other.inner.gammas
    }
}

impl<S: Scalar> fmt::Debug for Algebra<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Algebra")
            .field("gammas", &self.inner.gammas)
            .field("dim", &self.inner.dim)
            .finish()
    }
}

impl<S: Scalar> Algebra<S> {
    /// Builds the algebra obtained by doubling the base field once per
    /// parameter. An empty list gives the base field itself.
    pub fn new(gammas: Vec<S>) -> Result<Self> {
        if gammas.len() > MAX_HEIGHT {
            return Err(Error::InvalidParameter(format!(
                "tower height {} exceeds the supported maximum {MAX_HEIGHT}",
                gammas.len()
            )));
        }
        if let Some(pos) = gammas.iter().position(|g| g.is_zero()) {
            return Err(Error::InvalidParameter(format!(
                "gamma #{} is zero",
                pos + 1
            )));
        }
        let dim = 1usize << gammas.len();
        Ok(Algebra {
            inner: Arc::new(Descriptor { gammas, dim }),
        })
    }

    pub fn from_i64s(gammas: &[i64]) -> Result<Self> {
        Self::new(gammas.iter().map(|&g| S::from_i64(g)).collect())
    }

    pub fn gammas(&self) -> &[S] {
        &self.inner.gammas
    }

    pub fn dim(&self) -> usize {
        self.inner.dim
    }

    /// Number of doublings.
    pub fn height(&self) -> usize {
        self.inner.gammas.len()
    }

    /// Sufficient criterion for an anisotropic multiplicative norm over the
    /// rationals or reals: at most three doublings, all with negative γ.
    pub fn division_certified(&self) -> bool {
        self.dim() <= 8 && self.gammas().iter().all(|g| g.is_negative())
    }

    pub fn all_gammas_equal(&self, value: i64) -> bool {
        let v = S::from_i64(value);
        self.gammas().iter().all(|g| *g == v)
    }

    /// `CD(self, γ)`.
    pub fn double(&self, gamma: S) -> Result<Self> {
        let mut gammas = self.gammas().to_vec();
        gammas.push(gamma);
        Self::new(gammas)
    }

    /// The algebra this one was doubled from, with the outermost γ.
    pub fn split_outer(&self) -> Result<(Self, S)> {
        match self.gammas().split_last() {
            Some((gamma, rest)) => Ok((Self::new(rest.to_vec())?, gamma.clone())),
            None => Err(Error::Precondition(
                "the base field is not a doubling; nothing to split".into(),
            )),
        }
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> Result<T>) -> Result<Algebra<T>> {
        Algebra::new(self.gammas().iter().map(f).collect::<Result<_>>()?)
    }

    pub fn element(&self, coeffs: Vec<S>) -> Result<Element<S>> {
        if coeffs.len() != self.dim() {
            return Err(Error::InvalidParameter(format!(
                "expected {} coefficients, got {}",
                self.dim(),
                coeffs.len()
            )));
        }
        Ok(Element {
            algebra: self.clone(),
            coeffs,
        })
    }

    pub fn element_from_i64s(&self, coeffs: &[i64]) -> Result<Element<S>> {
        self.element(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    pub fn zero(&self) -> Element<S> {
        Element {
            algebra: self.clone(),
            coeffs: vec![S::zero(); self.dim()],
        }
    }

    pub fn one(&self) -> Element<S> {
        self.scalar(S::one())
    }

    /// `s·1`.
    pub fn scalar(&self, s: S) -> Element<S> {
        let mut e = self.zero();
        e.coeffs[0] = s;
        e
    }

    /// Basis element `e_index`.
    pub fn basis(&self, index: usize) -> Result<Element<S>> {
        if index >= self.dim() {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} out of range for dimension {}",
                self.dim()
            )));
        }
        let mut e = self.zero();
        e.coeffs[index] = S::one();
        Ok(e)
    }

    /// Embeds `(a, b)`, i.e. `a + b·v`, into this algebra, where `a` and `b`
    /// live in the next algebra down.
    pub fn join(&self, a: &Element<S>, b: &Element<S>) -> Result<Element<S>> {
        let (inner, _) = self.split_outer()?;
        if a.algebra != inner || b.algebra != inner {
            return Err(Error::IncompatibleAlgebras);
        }
        let mut coeffs = a.coeffs.clone();
        coeffs.extend_from_slice(&b.coeffs);
        self.element(coeffs)
    }
}

/// One hypercomplex number: a coefficient vector over the algebra's basis.
#[derive(Clone, PartialEq)]
pub struct Element<S: Scalar> {
    algebra: Algebra<S>,
    coeffs: Vec<S>,
}

impl<S: Scalar> fmt::Debug for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<S: Scalar> fmt::Display for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl<S: Scalar> Element<S> {
    pub fn algebra(&self) -> &Algebra<S> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True when every coefficient except the unit one is zero.
    pub fn is_scalar(&self) -> bool {
        self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    pub fn real_part(&self) -> &S {
        &self.coeffs[0]
    }

    /// Largest coefficient magnitude, as a float.
    pub fn max_abs(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Largest coefficient magnitude in the scalar type.
    pub fn max_abs_exact(&self) -> S {
        self.coeffs
            .iter()
            .map(num_traits::Signed::abs)
            .fold(S::zero(), |m, c| if c > m { c } else { m })
    }

    /// Splits `a + b·v` into `(a, b)` over the next algebra down.
    pub fn split(&self) -> Result<(Element<S>, Element<S>)> {
        let (inner, _) = self.algebra.split_outer()?;
        let h = self.dim() / 2;
        Ok((
            Element {
                algebra: inner.clone(),
                coeffs: self.coeffs[..h].to_vec(),
            },
            Element {
                algebra: inner,
                coeffs: self.coeffs[h..].to_vec(),
            },
        ))
    }

    pub fn map_scalars<T: Scalar>(
        &self,
        algebra: &Algebra<T>,
        f: impl Fn(&S) -> Result<T>,
    ) -> Result<Element<T>> {
        algebra.element(self.coeffs.iter().map(f).collect::<Result<_>>()?)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::IncompatibleAlgebras)
        }
    }

    fn with_coeffs(&self, coeffs: Vec<S>) -> Element<S> {
        Element {
            algebra: self.algebra.clone(),
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.with_coeffs(add_slices(&self.coeffs, &other.coeffs)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.with_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        ))
    }

    pub fn neg(&self) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn scale(&self, s: &S) -> Self {
        self.with_coeffs(scale_slice(&self.coeffs, s))
    }

    /// Product in the algebra, by the doubling formula applied recursively.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(self.with_coeffs(mul_slices(
            &self.coeffs,
            &other.coeffs,
            self.algebra.gammas(),
        )))
    }

    /// The involution: negates every coefficient but the unit one.
    pub fn conj(&self) -> Self {
        self.with_coeffs(conj_slice(&self.coeffs))
    }

    /// `ā·a`, checked to be a scalar within the mode's default tolerance.
    pub fn norm(&self) -> Result<S> {
        self.norm_with(&S::default_tolerance())
    }

    pub fn norm_with(&self, ctx: &ToleranceContext) -> Result<S> {
        let product = self.conj().mul(self)?;
        let scale = product.coeffs[0].to_f64().abs()
            + self.coeffs.iter().map(|c| c.to_f64().powi(2)).sum::<f64>();
        if let Some((i, c)) = product
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, c)| !c.is_negligible(ctx, scale))
        {
            return Err(Error::InternalConsistency(format!(
                "conj(a)·a has nonzero coefficient {c} at e{i} for a = {self}"
            )));
        }
        Ok(product.coeffs[0].clone())
    }

    /// `ā + a = 2·a₀`.
    pub fn trace(&self) -> S {
        self.coeffs[0].clone() + self.coeffs[0].clone()
    }

    /// `ā / Norm(a)`.
    ///
    /// Above dimension 8 this is only a norm-inverse: the identity
    /// `ā(ab) = Norm(a)·b` can fail there, so it must not be used to divide
    /// unless the algebra is known to be a division algebra.
    pub fn inverse(&self) -> Result<Self> {
        self.inverse_with(&S::default_tolerance())
    }

    pub fn inverse_with(&self, ctx: &ToleranceContext) -> Result<Self> {
        let n = self.norm_with(ctx)?;
        let scale = self.coeffs.iter().map(|c| c.to_f64().powi(2)).sum::<f64>();
        if n.is_zero() || n.is_negligible(ctx, scale) {
            return Err(Error::NotInvertible);
        }
        Ok(self.conj().scale(&(S::one() / n)))
    }

    /// `a·(a·(…·a))`; `a⁰ = 1`.
    pub fn pow(&self, k: u32) -> Self {
        let mut acc = self.algebra.one();
        for _ in 0..k {
            acc = self.with_coeffs(mul_slices(&self.coeffs, &acc.coeffs, self.algebra.gammas()));
        }
        acc
    }

    /// Matrix of `x ↦ a·x`; column `j` is `a·e_j`.
    pub fn left_mul_matrix(&self) -> Matrix<S> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        let mut unit = vec![S::zero(); n];
        for j in 0..n {
            unit[j] = S::one();
            let col = mul_slices(&self.coeffs, &unit, self.algebra.gammas());
            unit[j] = S::zero();
            for (i, c) in col.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        m
    }

    /// Coefficient-wise comparison under `ctx`, relative to the larger of the
    /// two magnitudes.
    pub fn approx_eq(&self, other: &Self, ctx: &ToleranceContext) -> bool {
        if self.algebra != other.algebra {
            return false;
        }
        let scale = self.max_abs().max(other.max_abs());
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .all(|(a, b)| (a.clone() - b.clone()).is_negligible(ctx, scale))
    }
}

fn add_slices<S: Scalar>(a: &[S], b: &[S]) -> Vec<S> {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() + y.clone())
        .collect()
}

fn scale_slice<S: Scalar>(a: &[S], s: &S) -> Vec<S> {
    a.iter().map(|x| x.clone() * s.clone()).collect()
}

fn conj_slice<S: Scalar>(a: &[S]) -> Vec<S> {
    let mut out = Vec::with_capacity(a.len());
    if let Some((first, rest)) = a.split_first() {
        out.push(first.clone());
        out.extend(rest.iter().map(|c| -c.clone()));
    }
    out
}

/// `(a₁, a₂)·(b₁, b₂) = (a₁b₁ + γ·b̄₂a₂, b₂a₁ + a₂b̄₁)`, with `γ` the last
/// entry of `gammas`.
fn mul_slices<S: Scalar>(a: &[S], b: &[S], gammas: &[S]) -> Vec<S> {
    debug_assert_eq!(a.len(), b.len());
    debug_assert_eq!(a.len(), 1 << gammas.len());
    let Some((gamma, inner)) = gammas.split_last() else {
        return vec![a[0].clone() * b[0].clone()];
    };
    let n = a.len();
    let zero = |x: &[S]| x.iter().all(|c| c.is_zero());
    if zero(a) || zero(b) {
        return vec![S::zero(); n];
    }
    let h = n / 2;
    let (a1, a2) = a.split_at(h);
    let (b1, b2) = b.split_at(h);

    let mut out = mul_slices(a1, b1, inner);
    if !zero(a2) && !zero(b2) {
        let twisted = mul_slices(&conj_slice(b2), a2, inner);
        for (o, t) in out.iter_mut().zip(twisted) {
            *o = o.clone() + gamma.clone() * t;
        }
    }
    let mut second = mul_slices(b2, a1, inner);
    if !zero(a2) {
        second = add_slices(&second, &mul_slices(a2, &conj_slice(b1), inner));
    }
    out.extend(second);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    type Q = Rational;

    fn quaternions() -> Algebra<Q> {
        Algebra::from_i64s(&[-1, -1]).unwrap()
    }

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    #[test]
    fn make_algebra_examples() {
        let base = Algebra::<Q>::new(vec![]).unwrap();
        assert_eq!(base.dim(), 1);
        assert!(base.division_certified());

        let h = quaternions();
        assert_eq!(h.dim(), 4);
        assert!(h.division_certified());

        let s = Algebra::<Q>::from_i64s(&[-1, -1, -1, -1]).unwrap();
        assert_eq!(s.dim(), 16);
        assert!(!s.division_certified());

        assert!(!Algebra::<Q>::from_i64s(&[-1, 1])
            .unwrap()
            .division_certified());
        assert!(matches!(
            Algebra::<Q>::from_i64s(&[-1, 0]),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn quaternion_units() {
        let h = quaternions();
        let i = h.basis(1).unwrap();
        let j = h.basis(2).unwrap();
        let k = h.basis(3).unwrap();
        assert_eq!(i.mul(&j).unwrap(), k);
        assert_eq!(j.mul(&i).unwrap(), k.neg());
        assert_eq!(i.mul(&i).unwrap(), h.scalar(q(-1)));
        assert_eq!(k.mul(&k).unwrap(), h.scalar(q(-1)));
    }

    #[test]
    fn outer_unit_squares_to_gamma() {
        for gammas in [vec![3], vec![-1, 2], vec![5, -2, 7], vec![-1, -1, -1, -3]] {
            let alg = Algebra::<Q>::from_i64s(&gammas).unwrap();
            let v = alg.basis(alg.dim() / 2).unwrap();
            let gamma = alg.gammas().last().unwrap().clone();
            assert_eq!(v.mul(&v).unwrap(), alg.scalar(gamma.clone()));

            // (a v)·v = γ a for a in the doubled subalgebra
            let (inner, _) = alg.split_outer().unwrap();
            let a = inner
                .element((0..inner.dim()).map(|t| q(t as i64 * 2 - 3)).collect())
                .unwrap();
            let av = alg.join(&inner.zero(), &a).unwrap();
            let expected = alg.join(&a.scale(&gamma), &inner.zero()).unwrap();
            assert_eq!(av.mul(&v).unwrap(), expected);
        }
    }

    #[test]
    fn linear_ops() {
        let h = quaternions();
        let a = h.element_from_i64s(&[1, -2, 3, 5]).unwrap();
        assert_eq!(a.add(&h.zero()).unwrap(), a);
        assert!(a.sub(&a).unwrap().is_zero());
        let half = Q::new(1.into(), 2.into());
        assert_eq!(a.scale(&half).scale(&q(2)), a);

        let c = Algebra::<Q>::from_i64s(&[-1]).unwrap();
        assert_eq!(a.add(&c.one()), Err(Error::IncompatibleAlgebras));
        assert_eq!(a.mul(&c.one()), Err(Error::IncompatibleAlgebras));
    }

    #[test]
    fn conjugation() {
        let h = quaternions();
        assert_eq!(h.one().conj(), h.one());
        let c = h.element_from_i64s(&[-1, 0, 0, -1]).unwrap();
        assert_eq!(c.conj(), h.element_from_i64s(&[-1, 0, 0, 1]).unwrap());
        assert_eq!(c.conj().conj(), c);
    }

    #[test]
    fn norm_and_trace() {
        let h = quaternions();
        assert_eq!(
            h.element_from_i64s(&[0, 1, 1, 0]).unwrap().norm().unwrap(),
            q(2)
        );
        assert_eq!(h.zero().norm().unwrap(), q(0));
        let s = Q::new(7.into(), 3.into());
        let oct = Algebra::<Q>::from_i64s(&[2, -1, 5]).unwrap();
        assert_eq!(oct.scalar(s.clone()).norm().unwrap(), s.clone() * s);

        assert_eq!(h.one().trace(), q(2));
        assert_eq!(h.basis(1).unwrap().trace(), q(0));
        assert_eq!(h.element_from_i64s(&[3, 1, 0, 0]).unwrap().trace(), q(6));
    }

    #[test]
    fn inverses() {
        let h = quaternions();
        let i = h.basis(1).unwrap();
        assert_eq!(i.inverse().unwrap(), i.neg());
        assert_eq!(
            h.scalar(q(2)).inverse().unwrap(),
            h.scalar(Q::new(1.into(), 2.into()))
        );
        assert_eq!(h.zero().inverse(), Err(Error::NotInvertible));
        let a = h.element_from_i64s(&[1, 2, -1, 4]).unwrap();
        assert_eq!(a.inverse().unwrap().mul(&a).unwrap(), h.one());

        let split = Algebra::<Q>::from_i64s(&[1]).unwrap();
        let isotropic = split.element_from_i64s(&[1, 1]).unwrap();
        assert_eq!(isotropic.norm().unwrap(), q(0));
        assert_eq!(isotropic.inverse(), Err(Error::NotInvertible));
    }

    #[test]
    fn powers() {
        let h = quaternions();
        let a = h.element_from_i64s(&[2, -1, 3, 1]).unwrap();
        assert_eq!(a.pow(0), h.one());
        assert_eq!(a.pow(1), a);
        assert_eq!(h.basis(1).unwrap().pow(2), h.scalar(q(-1)));
        let quad = a
            .pow(2)
            .sub(&a.scale(&a.trace()))
            .unwrap()
            .add(&h.scalar(a.norm().unwrap()))
            .unwrap();
        assert!(quad.is_zero());
    }

    #[test]
    fn left_multiplication_matrix() {
        let oct = Algebra::<Q>::from_i64s(&[-1, 2, -3]).unwrap();
        let mut identity = Matrix::zeros(8, 8);
        for i in 0..8 {
            identity[(i, i)] = q(1);
        }
        assert_eq!(oct.one().left_mul_matrix(), identity);
        let five = oct.scalar(q(5)).left_mul_matrix();
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(five[(i, j)], if i == j { q(5) } else { q(0) });
            }
        }
        let a = oct.element_from_i64s(&[1, -2, 0, 3, 1, 1, -1, 2]).unwrap();
        let x = oct.element_from_i64s(&[0, 4, -1, 2, 2, 0, 1, -3]).unwrap();
        let mx = a.left_mul_matrix().mul_vec(x.coeffs());
        assert_eq!(mx, a.mul(&x).unwrap().into_coeffs());
    }

    #[test]
    fn split_and_join_round_trip() {
        let oct = Algebra::<Q>::from_i64s(&[-1, -1, -1]).unwrap();
        let a = oct.element_from_i64s(&[1, 2, 3, 4, 5, 6, 7, 8]).unwrap();
        let (lo, hi) = a.split().unwrap();
        assert_eq!(lo.coeffs(), &[q(1), q(2), q(3), q(4)]);
        assert_eq!(oct.join(&lo, &hi).unwrap(), a);
        assert!(Algebra::<Q>::new(vec![]).unwrap().one().split().is_err());
    }

    #[test]
    fn float_norm_tolerates_rounding() {
        let h = Algebra::<f64>::from_i64s(&[-1, -1]).unwrap();
        let a = h.element(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let n = a.norm().unwrap();
        assert!((n - 0.3).abs() < 1e-15);
    }
}
