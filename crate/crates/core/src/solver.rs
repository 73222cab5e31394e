//! Alternating roots over division Cayley-Dickson algebras.
//!
//! For `f = E(x) + O(x)` split into even and odd parts, an alternating root
//! `λ` of norm `N` satisfies `O(N)·λ = −E(N)`. Taking norms on both sides
//! turns this into a scalar equation `p(N) = Norm(E(N)) − N·Norm(O(N)) = 0`.
//! Each nonnegative root `N₀` of `p` then yields either
//!
//! * a single isolated root `λ = −O(N₀)⁻¹·E(N₀)`, or
//! * when `O(N₀) = E(N₀) = 0`, a whole sphere of roots: every element of
//!   norm `N₀`.
//!
//! Dividing by `O(N₀)` relies on `ā(ab) = Norm(a)·b`, which holds only up
//! to dimension 8, so [`alt_roots`] refuses other algebras unless told the
//! algebra is a division algebra. Every reported root is re-verified by
//! evaluating `f` at it.

use num_traits::{One, Zero};

use crate::algebra::Element;
use crate::error::{Error, Result};
use crate::poly::{AlgPoly, CentralPoly, NormPoly};
use crate::real_roots::{
    count_in, isolate_nonnegative_roots, poly_gcd, refine_root, square_free_part, sturm_sequence,
    IsolatedRootInterval, RationalPoly,
};
use crate::scalar::{Rational, Scalar, ScalarMode, ToleranceContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootKind {
    /// The unique alternating root of its norm.
    Isolated,
    /// Every element of this norm is an alternating root.
    Spherical,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NormValue<S> {
    Exact(S),
    /// An irrational (or numerically located) norm inside `[lo, hi]`.
    Interval {
        lo: Rational,
        hi: Rational,
        approx: S,
    },
}

impl<S: Scalar> NormValue<S> {
    /// The exact value, or the approximation used to build the root.
    pub fn value(&self) -> &S {
        match self {
            NormValue::Exact(v) => v,
            NormValue::Interval { approx, .. } => approx,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, NormValue::Exact(_))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootResult<S: Scalar> {
    pub kind: RootKind,
    pub norm: NormValue<S>,
    /// The isolated root, or a witness on the sphere when one could be
    /// written down (`√N₀·1`).
    pub root: Option<Element<S>>,
    pub witness_available: bool,
    /// Largest coefficient magnitude of `f` evaluated alternately at `root`.
    pub residual: S,
    /// True when both the norm and the root are exact rationals.
    pub exact: bool,
    /// Multiplicity of `N₀` as a root of the central polynomial.
    pub multiplicity: usize,
    /// Produced by the scanning solver, which makes no completeness claim.
    pub experimental: bool,
}

impl<S: Scalar> RootResult<S> {
    /// The flag the reference Octave routine returns alongside each root:
    /// 1 for spherical, 0 for isolated.
    pub fn octave_flag(&self) -> u8 {
        match self.kind {
            RootKind::Isolated => 0,
            RootKind::Spherical => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolveOptions {
    /// Acceptance tolerance for roots that are not exact.
    pub tolerance: ToleranceContext,
    /// Irrational norms are refined to width `2^-precision_bits`.
    pub precision_bits: u32,
    /// Treat the algebra as a division algebra even when it cannot be
    /// certified as one.
    pub assume_division: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tolerance: ToleranceContext::default(),
            precision_bits: 64,
            assume_division: false,
        }
    }
}

/// `p(N) = Norm(E)(N) − N·Norm(O)(N)`.
pub fn central_polynomial<S: Scalar>(f: &AlgPoly<S>) -> Result<CentralPoly<S>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (even, odd) = f.even_odd_split();
    Ok(even.norm_expand()?.sub(&odd.norm_expand()?.shift()))
}

/// Largest coefficient magnitude of the alternating evaluation of `f` at
/// `lam`. Zero exactly when `lam` is an alternating root (exact mode).
pub fn verify_alt_root<S: Scalar>(
    f: &AlgPoly<S>,
    lam: &Element<S>,
    ctx: &ToleranceContext,
) -> Result<S> {
    if lam.algebra() != f.algebra() {
        return Err(Error::IncompatibleAlgebras);
    }
    let n = lam.norm_with(ctx)?;
    let (even, odd) = f.even_odd_split();
    let value = even.eval(&n).add(&odd.eval(&n).mul(lam)?)?;
    Ok(value.max_abs_exact())
}

/// Acceptance test for an approximate root.
fn within_tolerance<S: Scalar>(
    f: &AlgPoly<S>,
    lam: &Element<S>,
    norm_target: f64,
    residual: &S,
    ctx: &ToleranceContext,
) -> Result<bool> {
    let norm = lam.norm_with(ctx)?.to_f64();
    Ok(residual.to_f64() <= ctx.bound(f.max_abs())
        && (norm - norm_target).abs() <= ctx.bound(norm_target.abs().max(1.0)))
}

struct Pipeline<'a, S: Scalar> {
    f: &'a AlgPoly<S>,
    even: NormPoly<Rational>,
    odd: NormPoly<Rational>,
    opts: &'a SolveOptions,
    sphere: RationalPoly,
    sphere_seq: Option<Vec<RationalPoly>>,
}

impl<'a, S: Scalar> Pipeline<'a, S> {
    fn new(f: &'a AlgPoly<S>, fq: &AlgPoly<Rational>, opts: &'a SolveOptions) -> Result<Self> {
        let (even, odd) = fq.even_odd_split();
        // Norms at which E and O vanish together: common roots of all their
        // coordinate polynomials.
        let dim = fq.algebra().dim();
        let sphere = (0..dim)
            .flat_map(|i| [even.component(i), odd.component(i)])
            .fold(RationalPoly::zero(), |g, c| poly_gcd(&g, &c));
        let sphere_seq = match sphere.degree() {
            Some(d) if d >= 1 => Some(sturm_sequence(&square_free_part(&sphere)?.part)),
            _ => None,
        };
        Ok(Pipeline {
            f,
            even,
            odd,
            opts,
            sphere,
            sphere_seq,
        })
    }

    fn is_spherical(&self, iv: &IsolatedRootInterval) -> bool {
        if self.sphere.is_zero() {
            return true;
        }
        let Some(seq) = &self.sphere_seq else {
            return false;
        };
        match iv.exact_value() {
            Some(r) => self.sphere.eval(r).is_zero(),
            None => count_in(seq, iv.lo(), iv.hi()) > 0,
        }
    }

    fn norm_value(&self, iv: &IsolatedRootInterval) -> (Rational, NormValue<S>) {
        match iv.exact_value() {
            Some(r) => (r.clone(), NormValue::Exact(S::from_rational(r))),
            None => {
                let width = Rational::new(
                    One::one(),
                    num_traits::pow(
                        num_bigint::BigInt::from(2u32),
                        self.opts.precision_bits as usize,
                    ),
                );
                let refined = refine_root(iv, &width);
                let mid = refined.midpoint();
                let value = NormValue::Interval {
                    lo: refined.lo().clone(),
                    hi: refined.hi().clone(),
                    approx: S::from_rational(&mid),
                };
                (mid, value)
            }
        }
    }

    fn isolated(&self, iv: &IsolatedRootInterval) -> Result<Option<RootResult<S>>> {
        let (n0, norm) = self.norm_value(iv);
        let o = self.odd.eval(&n0);
        let e = self.even.eval(&n0);
        let inv = match o.neg().inverse() {
            Ok(inv) => inv,
            // O(N₀) = 0 without E(N₀) = 0, or an isotropic O(N₀) under
            // --assume-division: no root of this norm.
            Err(Error::NotInvertible) => return Ok(None),
            Err(err) => return Err(err),
        };
        let lam_exact = inv.mul(&e)?;
        let lam = lam_exact.map_scalars(self.f.algebra(), |c| Ok(S::from_rational(c)))?;
        let residual = verify_alt_root(self.f, &lam, &self.opts.tolerance)?;

        let exact = S::MODE == ScalarMode::Exact && norm.is_exact();
        let accepted = if exact {
            residual.is_zero() && lam.norm()? == *norm.value()
        } else {
            within_tolerance(self.f, &lam, n0_f64(&n0), &residual, &self.opts.tolerance)?
        };
        Ok(accepted.then(|| RootResult {
            kind: RootKind::Isolated,
            norm,
            root: Some(lam),
            witness_available: true,
            residual,
            exact,
            multiplicity: iv.multiplicity(),
            experimental: false,
        }))
    }

    fn spherical(&self, iv: &IsolatedRootInterval) -> Result<Option<RootResult<S>>> {
        let (n0, norm) = self.norm_value(iv);
        let exact = S::MODE == ScalarMode::Exact && norm.is_exact();
        let witness = match (&norm, S::MODE) {
            (NormValue::Exact(v), _) => v.sqrt_checked(),
            (NormValue::Interval { approx, .. }, ScalarMode::Float) => approx.sqrt_checked(),
            (NormValue::Interval { .. }, ScalarMode::Exact) => None,
        };
        let Some(w) = witness else {
            return Ok(Some(RootResult {
                kind: RootKind::Spherical,
                norm,
                root: None,
                witness_available: false,
                residual: S::zero(),
                exact,
                multiplicity: iv.multiplicity(),
                experimental: false,
            }));
        };
        let root = self.f.algebra().scalar(w);
        let residual = verify_alt_root(self.f, &root, &self.opts.tolerance)?;
        let accepted = if exact {
            residual.is_zero()
        } else {
            within_tolerance(self.f, &root, n0_f64(&n0), &residual, &self.opts.tolerance)?
        };
        Ok(accepted.then(|| RootResult {
            kind: RootKind::Spherical,
            norm,
            root: Some(root),
            witness_available: true,
            residual,
            exact,
            multiplicity: iv.multiplicity(),
            experimental: false,
        }))
    }
}

fn n0_f64(n0: &Rational) -> f64 {
    f64::from_rational(n0)
}

fn zero_root<S: Scalar>(f: &AlgPoly<S>, experimental: bool) -> RootResult<S> {
    RootResult {
        kind: RootKind::Isolated,
        norm: NormValue::Exact(S::zero()),
        root: Some(f.algebra().zero()),
        witness_available: true,
        residual: S::zero(),
        exact: S::MODE == ScalarMode::Exact,
        multiplicity: 1,
        experimental,
    }
}

/// All alternating roots of `f`, ordered by ascending norm.
pub fn alt_roots<S: Scalar>(f: &AlgPoly<S>, opts: &SolveOptions) -> Result<Vec<RootResult<S>>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.algebra().division_certified() && !opts.assume_division {
        return Err(Error::UnsupportedAlgebra(format!(
            "gammas [{}] are not certified as a division algebra (needs dimension <= 8 and all \
             gammas negative); pass assume_division to override",
            f.algebra()
                .gammas()
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        )));
    }
    let fq = f.map_scalars(S::to_rational)?;
    let (even, odd) = fq.even_odd_split();
    let p = even.norm_expand()?.sub(&odd.norm_expand()?.shift());
    let pipeline = Pipeline::new(f, &fq, opts)?;

    let mut results = Vec::new();
    // λ = 0 is the only element of norm 0 in a division algebra.
    if f.coeff(0).is_zero() {
        results.push(zero_root(f, false));
    }
    for iv in isolate_nonnegative_roots(&p)? {
        if iv.exact_value().is_some_and(Zero::is_zero) {
            continue;
        }
        let found = if pipeline.is_spherical(&iv) {
            pipeline.spherical(&iv)?
        } else {
            pipeline.isolated(&iv)?
        };
        results.extend(found);
    }
    Ok(results)
}

/// Runs the solver on an odd-degree polynomial over a real tower with every
/// γ = −1 and reports whether some verified alternating root exists.
/// Dimensions above 8 go through [`generalized_alt_roots`].
pub fn odd_degree_existence_check<S: Scalar>(f: &AlgPoly<S>) -> Result<bool> {
    if !f.algebra().all_gammas_equal(-1) {
        return Err(Error::Precondition("every gamma must be -1".into()));
    }
    match f.degree() {
        Some(d) if d % 2 == 1 => {}
        _ => return Err(Error::Precondition("degree must be odd".into())),
    }
    if f.algebra().dim() <= 8 {
        Ok(!alt_roots(f, &SolveOptions::default())?.is_empty())
    } else {
        let ff = f.map_scalars(|c| Ok(c.to_f64()))?;
        Ok(
            !generalized_alt_roots(&ff, &SolveOptions::default(), &ScanParams::default())?
                .is_empty(),
        )
    }
}

/// Sampling parameters for [`generalized_alt_roots`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanParams {
    /// Upper end of the scanned norm range; derived from the coefficients
    /// when absent.
    pub n_max: Option<f64>,
    pub samples: usize,
    pub max_bisections: usize,
}

impl Default for ScanParams {
    fn default() -> Self {
        ScanParams {
            n_max: None,
            samples: 4000,
            max_bisections: 200,
        }
    }
}

/// Experimental alternating-root search for real towers of any height.
///
/// Norm multiplicativity is not available above dimension 8, so instead of
/// a central polynomial this scans `N`: solve `L_{O(N)}·λ = −E(N)` with the
/// left-multiplication matrix, and look for sign changes of
/// `r(N) = Norm(λ(N)) − N`. Only roots that pass verification are returned,
/// and there is no claim that every root is found.
pub fn generalized_alt_roots(
    f: &AlgPoly<f64>,
    opts: &SolveOptions,
    scan: &ScanParams,
) -> Result<Vec<RootResult<f64>>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.algebra().all_gammas_equal(-1) {
        return Err(Error::Precondition(
            "the scan needs every gamma equal to -1".into(),
        ));
    }
    if scan.samples == 0 {
        return Err(Error::InvalidParameter("samples must be positive".into()));
    }
    let ctx = &opts.tolerance;
    let (even, odd) = f.even_odd_split();

    let mut results = Vec::new();
    if f.coeff(0).is_zero() {
        results.push(zero_root(f, true));
    }

    let n_max = match scan.n_max {
        Some(n) if n > 0.0 && n.is_finite() => n,
        Some(n) => {
            return Err(Error::InvalidParameter(format!(
                "n_max must be positive, got {n}"
            )))
        }
        None => default_scan_limit(f)?,
    };

    let solve = |n: f64| -> Option<Element<f64>> {
        let o = odd.eval(&n);
        let e = even.eval(&n);
        let rhs: Vec<f64> = e.coeffs().iter().map(|c| -c).collect();
        let x = o.left_mul_matrix().solve(&rhs, ctx)?;
        f.algebra().element(x).ok()
    };
    let r = |n: f64| -> Option<f64> {
        let lam = solve(n)?;
        Some(lam.norm_with(ctx).ok()? - n)
    };

    let t_max = n_max.sqrt();
    let mut candidates = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 1..=scan.samples {
        let t = t_max * i as f64 / scan.samples as f64;
        let n = t * t;
        let Some(rn) = r(n) else {
            prev = None;
            continue;
        };
        if rn == 0.0 {
            candidates.push(n);
        } else if let Some((pn, pr)) = prev {
            if pr != 0.0 && pr.signum() != rn.signum() {
                candidates.push(bisect_sign_change(&r, pn, pr, n, scan.max_bisections));
            }
        }
        prev = Some((n, rn));
    }

    let mut last: Option<f64> = None;
    for n in candidates {
        if last.is_some_and(|l| (n - l).abs() <= 1e-9 * n.max(1.0)) {
            continue;
        }
        let Some(lam) = solve(n) else { continue };
        let residual = verify_alt_root(f, &lam, ctx)?;
        if !within_tolerance(f, &lam, n, &residual, ctx)? {
            continue;
        }
        last = Some(n);
        let lo = n.to_rational()?;
        results.push(RootResult {
            kind: RootKind::Isolated,
            norm: NormValue::Interval {
                hi: lo.clone(),
                lo,
                approx: n,
            },
            root: Some(lam),
            witness_available: true,
            residual,
            exact: false,
            multiplicity: 1,
            experimental: true,
        });
    }
    Ok(results)
}

fn bisect_sign_change(
    r: &impl Fn(f64) -> Option<f64>,
    mut lo: f64,
    lo_val: f64,
    mut hi: f64,
    max_steps: usize,
) -> f64 {
    let lo_sign = lo_val.signum();
    for _ in 0..max_steps {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        match r(mid) {
            Some(0.0) => return mid,
            Some(v) if v.signum() == lo_sign => lo = mid,
            Some(_) => hi = mid,
            None => break,
        }
    }
    0.5 * (lo + hi)
}

/// `(1 + 2·max_{k<n} |a_k| / |a_n|)²`, with `|a| = √Norm(a)`.
fn default_scan_limit(f: &AlgPoly<f64>) -> Result<f64> {
    let mags = f
        .coeffs()
        .iter()
        .map(|c| Ok(c.norm()?.max(0.0).sqrt()))
        .collect::<Result<Vec<f64>>>()?;
    let (lead, rest) = mags.split_last().expect("nonzero polynomial");
    let ratio = rest.iter().fold(0.0f64, |m, a| m.max(a / lead));
    Ok((1.0 + 2.0 * ratio).powi(2))
}
