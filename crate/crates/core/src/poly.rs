//! Polynomials over a Cayley-Dickson algebra.
//!
//! Coefficients are stored in ascending order, `coeffs[k]` being the
//! coefficient of `x^k`. Coefficients always multiply powers from the left.
//!
//! Two kinds of evaluation are provided. Regular evaluation computes
//! `Σ a_k·λ^k`. Alternating evaluation replaces `λ^k` with the alternating
//! word `…λ̄λλ̄λ` of length `k`; since `λ̄λ = Norm(λ)` is a scalar this
//! collapses to `E(N) + O(N)·λ`, where `E` and `O` gather the even- and
//! odd-index coefficients as polynomials in `N = Norm(λ)`.

use std::fmt;

use crate::algebra::{Algebra, Element};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Polynomial in the scalar variable `N` with scalar coefficients.
#[derive(Clone, PartialEq)]
pub struct CentralPoly<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> fmt::Debug for CentralPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CentralPoly({self})")
    }
}

impl<S: Scalar> fmt::Display for CentralPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_negative() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => f.write_str("N")?,
                _ => write!(f, "N^{k}")?,
            }
        }
        Ok(())
    }
}

impl<S: Scalar> CentralPoly<S> {
    /// Trailing zero coefficients are dropped; the zero polynomial is empty.
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CentralPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| S::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        CentralPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// `N - r`.
    pub fn linear_root(r: S) -> Self {
        Self::new(vec![-r, S::one()])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[S], i: usize| v.get(i).cloned().unwrap_or_else(S::zero);
        Self::new(
            (0..n)
                .map(|i| get(&self.coeffs, i) + get(&other.coeffs, i))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        CentralPoly {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// Multiplication by the variable `N`.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(S::zero());
        coeffs.extend_from_slice(&self.coeffs);
        CentralPoly { coeffs }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * S::from_i64(k as i64))
                .collect(),
        )
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let lead = divisor
            .leading()
            .expect("division by the zero polynomial")
            .clone();
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![S::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd].clone() / lead.clone();
            if !c.is_zero() {
                for (i, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] = rem[k + i].clone() - c.clone() * d.clone();
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&(S::one() / l.clone())),
            None => Self::zero(),
        }
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> Result<T>) -> Result<CentralPoly<T>> {
        Ok(CentralPoly::new(
            self.coeffs.iter().map(f).collect::<Result<_>>()?,
        ))
    }
}

/// Polynomial in the scalar variable `N` whose coefficients are algebra
/// elements. This is the shape of the even and odd parts `E`, `O`. It is
/// kept exactly as built (no trimming), so zero padding stays visible.
#[derive(Debug, Clone, PartialEq)]
pub struct NormPoly<S: Scalar> {
    algebra: Algebra<S>,
    coeffs: Vec<Element<S>>,
}

impl<S: Scalar> NormPoly<S> {
    pub fn new(algebra: Algebra<S>, coeffs: Vec<Element<S>>) -> Result<Self> {
        if coeffs.iter().any(|c| *c.algebra() != algebra) {
            return Err(Error::IncompatibleAlgebras);
        }
        Ok(NormPoly { algebra, coeffs })
    }

    pub fn algebra(&self) -> &Algebra<S> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Element<S>] {
        &self.coeffs
    }

    /// `Σ c_i·Nⁱ` as an element.
    pub fn eval(&self, n: &S) -> Element<S> {
        self.coeffs
            .iter()
            .rev()
            .fold(self.algebra.zero(), |acc, c| {
                acc.scale(n).add(c).expect("coefficients share the algebra")
            })
    }

    /// The scalar polynomial formed by coordinate `index` of every
    /// coefficient.
    pub fn component(&self, index: usize) -> CentralPoly<S> {
        CentralPoly::new(
            self.coeffs
                .iter()
                .map(|c| c.coeffs()[index].clone())
                .collect(),
        )
    }

    /// `conj(g(N))·g(N)` as a polynomial in `N`.
    ///
    /// The coefficient of `N^k` is `Σ_{i<j, i+j=k} Tr(c̄_i c_j)` plus
    /// `Norm(c_{k/2})` when `k` is even. Each cross term
    /// `c̄_i c_j + c̄_j c_i` is checked to be a scalar.
    pub fn norm_expand(&self) -> Result<CentralPoly<S>> {
        let len = self.coeffs.len();
        if len == 0 {
            return Ok(CentralPoly::zero());
        }
        let ctx = S::default_tolerance();
        let mut out = vec![S::zero(); 2 * len - 1];
        for i in 0..len {
            out[2 * i] = out[2 * i].clone() + self.coeffs[i].norm_with(&ctx)?;
            for j in i + 1..len {
                let ci = &self.coeffs[i];
                let cj = &self.coeffs[j];
                let cross = ci.conj().mul(cj)?.add(&cj.conj().mul(ci)?)?;
                let scale = ci.max_abs() * cj.max_abs();
                if let Some((idx, c)) = cross
                    .coeffs()
                    .iter()
                    .enumerate()
                    .skip(1)
                    .find(|(_, c)| !c.is_negligible(&ctx, scale))
                {
                    return Err(Error::InternalConsistency(format!(
                        "Tr(conj(c{i})·c{j}) has nonzero coefficient {c} at e{idx}"
                    )));
                }
                out[i + j] = out[i + j].clone() + cross.real_part().clone();
            }
        }
        Ok(CentralPoly::new(out))
    }
}

/// Polynomial with coefficients in a Cayley-Dickson algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgPoly<S: Scalar> {
    algebra: Algebra<S>,
    coeffs: Vec<Element<S>>,
}

impl<S: Scalar> AlgPoly<S> {
    /// Trailing zero coefficients are dropped.
    pub fn new(algebra: Algebra<S>, mut coeffs: Vec<Element<S>>) -> Result<Self> {
        if coeffs.iter().any(|c| *c.algebra() != algebra) {
            return Err(Error::IncompatibleAlgebras);
        }
        while coeffs.last().is_some_and(Element::is_zero) {
            coeffs.pop();
        }
        Ok(AlgPoly { algebra, coeffs })
    }

    pub fn from_coeff_vectors(algebra: &Algebra<S>, vectors: Vec<Vec<S>>) -> Result<Self> {
        let coeffs = vectors
            .into_iter()
            .map(|v| algebra.element(v))
            .collect::<Result<_>>()?;
        Self::new(algebra.clone(), coeffs)
    }

    pub fn from_i64s(algebra: &Algebra<S>, vectors: &[&[i64]]) -> Result<Self> {
        let coeffs = vectors
            .iter()
            .map(|v| algebra.element_from_i64s(v))
            .collect::<Result<_>>()?;
        Self::new(algebra.clone(), coeffs)
    }

    pub fn zero(algebra: &Algebra<S>) -> Self {
        AlgPoly {
            algebra: algebra.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn algebra(&self) -> &Algebra<S> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[Element<S>] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Element<S> {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| self.algebra.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Largest coefficient magnitude over all coefficients.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(Element::max_abs).fold(0.0, f64::max)
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> Result<T> + Copy) -> Result<AlgPoly<T>> {
        let algebra = self.algebra.map_scalars(f)?;
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.map_scalars(&algebra, f))
            .collect::<Result<_>>()?;
        AlgPoly::new(algebra, coeffs)
    }

    fn check_point(&self, lam: &Element<S>) -> Result<()> {
        if *lam.algebra() == self.algebra {
            Ok(())
        } else {
            Err(Error::IncompatibleAlgebras)
        }
    }

    /// `Σ a_k·(λ^k)`.
    pub fn eval_regular(&self, lam: &Element<S>) -> Result<Element<S>> {
        self.check_point(lam)?;
        let mut acc = self.algebra.zero();
        let mut power = self.algebra.one();
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                power = lam.mul(&power)?;
            }
            acc = acc.add(&a.mul(&power)?)?;
        }
        Ok(acc)
    }

    /// Alternating evaluation via `E(N) + O(N)·λ` with `N = Norm(λ)`.
    pub fn eval_alternating(&self, lam: &Element<S>) -> Result<Element<S>> {
        self.check_point(lam)?;
        let n = lam.norm()?;
        let (even, odd) = self.even_odd_split();
        even.eval(&n).add(&odd.eval(&n).mul(lam)?)
    }

    /// Alternating evaluation by building every word `…λ̄λλ̄λ` with explicit
    /// multiplications, associated right to left. Slow; kept as a reference.
    pub fn eval_alternating_literal(&self, lam: &Element<S>) -> Result<Element<S>> {
        self.check_point(lam)?;
        let lam_bar = lam.conj();
        let mut acc = self.algebra.zero();
        let mut word = self.algebra.one();
        for (k, a) in self.coeffs.iter().enumerate() {
            if k > 0 {
                let letter = if k % 2 == 1 { lam } else { &lam_bar };
                word = letter.mul(&word)?;
            }
            acc = acc.add(&a.mul(&word)?)?;
        }
        Ok(acc)
    }

    /// Even part `E = [a₀, a₂, …]` and odd part `O = [a₁, a₃, …]` after
    /// padding to odd degree `2k+1` with a zero top coefficient when needed.
    pub fn even_odd_split(&self) -> (NormPoly<S>, NormPoly<S>) {
        let mut padded = self.coeffs.clone();
        if padded.len() % 2 == 1 {
            padded.push(self.algebra.zero());
        }
        let even = padded.iter().step_by(2).cloned().collect();
        let odd = padded.iter().skip(1).step_by(2).cloned().collect();
        (
            NormPoly {
                algebra: self.algebra.clone(),
                coeffs: even,
            },
            NormPoly {
                algebra: self.algebra.clone(),
                coeffs: odd,
            },
        )
    }

    /// The alternating friend over `B = CD(A, γ)`: coefficients
    /// `b_{2i} = γ^{-i}·ā_{2i}` and `b_{2i+1} = γ^{-(i+1)}·ā_{2i+1}·v`.
    pub fn alternating_friend(&self, gamma: &S) -> Result<AlgPoly<S>> {
        if gamma.is_zero() {
            return Err(Error::InvalidParameter("gamma must be nonzero".into()));
        }
        let doubled = self.algebra.double(gamma.clone())?;
        let inv_gamma = S::one() / gamma.clone();
        let zero = self.algebra.zero();
        let mut factor = S::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (k, a) in self.coeffs.iter().enumerate() {
            if k % 2 == 1 {
                // γ^{-(i+1)} for k = 2i+1; the same power serves k = 2i+2.
                factor = factor * inv_gamma.clone();
                coeffs.push(doubled.join(&zero, &a.conj().scale(&factor))?);
            } else {
                coeffs.push(doubled.join(&a.conj().scale(&factor), &zero)?);
            }
        }
        AlgPoly::new(doubled, coeffs)
    }

    /// Splits `h` over `B = CD(A, γ)` into `(f, g)` over `A` with
    /// `h = f̃ + g̃·v`. Writing `h_k = u_k + w_k·v`:
    /// for `k = 2i`, `f_k = γⁱ·ū_k` and `g_k = γⁱ·w̄_k`;
    /// for `k = 2i+1`, `f_k = γ^{i+1}·w̄_k` and `g_k = γⁱ·ū_k`.
    pub fn decompose_doubling(&self) -> Result<(AlgPoly<S>, AlgPoly<S>)> {
        let (inner, gamma) = self.algebra.split_outer()?;
        let mut f = Vec::with_capacity(self.coeffs.len());
        let mut g = Vec::with_capacity(self.coeffs.len());
        let mut gamma_i = S::one();
        for (k, h) in self.coeffs.iter().enumerate() {
            let (u, w) = h.split()?;
            if k % 2 == 0 {
                f.push(u.conj().scale(&gamma_i));
                g.push(w.conj().scale(&gamma_i));
            } else {
                f.push(w.conj().scale(&(gamma_i.clone() * gamma.clone())));
                g.push(u.conj().scale(&gamma_i));
                gamma_i = gamma_i * gamma.clone();
            }
        }
        Ok((AlgPoly::new(inner.clone(), f)?, AlgPoly::new(inner, g)?))
    }

    /// `f̃ + g̃·v` over `CD(A, γ)`, built with the algebra's multiplication
    /// (inverse of [`AlgPoly::decompose_doubling`]).
    pub fn recompose(f: &AlgPoly<S>, g: &AlgPoly<S>, gamma: &S) -> Result<AlgPoly<S>> {
        if f.algebra != g.algebra {
            return Err(Error::IncompatibleAlgebras);
        }
        let ff = f.alternating_friend(gamma)?;
        let gf = g.alternating_friend(gamma)?;
        let doubled = ff.algebra.clone();
        let v = doubled.basis(doubled.dim() / 2)?;
        let len = ff.coeffs.len().max(gf.coeffs.len());
        let coeffs = (0..len)
            .map(|k| ff.coeff(k).add(&gf.coeff(k).mul(&v)?))
            .collect::<Result<_>>()?;
        AlgPoly::new(doubled, coeffs)
    }
}
