//! Exact real-root isolation for central polynomials.
//!
//! All work happens over the rationals. Float-mode polynomials are converted
//! exactly first (every finite binary float is a rational), so the candidate
//! norms never depend on a tolerance.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::CentralPoly;
use crate::scalar::{Rational, Scalar};

pub type RationalPoly = CentralPoly<Rational>;

/// Monic gcd; zero only when both inputs are zero.
pub fn poly_gcd(a: &RationalPoly, b: &RationalPoly) -> RationalPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_zero() {
        let (_, r) = a.div_rem(&b);
        a = b;
        b = r.monic();
    }
    a.monic()
}

/// Exact quotient; the caller guarantees divisibility.
fn exact_div(a: &RationalPoly, b: &RationalPoly) -> RationalPoly {
    let (q, r) = a.div_rem(b);
    debug_assert!(r.is_zero(), "inexact polynomial division");
    q
}

/// Square-free decomposition `p = c · Π fᵢ^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareFree {
    /// `p / gcd(p, p′)`, monic.
    pub part: RationalPoly,
    /// Monic, pairwise coprime, square-free factors with their multiplicity.
    /// Factors of degree zero are omitted.
    pub factors: Vec<(RationalPoly, usize)>,
}

impl SquareFree {
    /// Multiplicity of the rational `r` as a root of the original
    /// polynomial; zero when it is not a root.
    pub fn multiplicity_of(&self, r: &Rational) -> usize {
        self.factors
            .iter()
            .find(|(f, _)| f.eval(r).is_zero())
            .map_or(0, |(_, m)| *m)
    }
}

/// Yun's algorithm.
pub fn square_free_part<S: Scalar>(p: &CentralPoly<S>) -> Result<SquareFree> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let f = p.map_scalars(S::to_rational)?.monic();
    let df = f.derivative();
    let a0 = poly_gcd(&f, &df);
    let part = exact_div(&f, &a0);

    let mut factors = Vec::new();
    let mut b = part.clone();
    let mut c = exact_div(&df, &a0);
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        let a = poly_gcd(&b, &d);
        if a.degree().unwrap_or(0) > 0 {
            factors.push((a.clone(), i));
        }
        b = exact_div(&b, &a);
        c = exact_div(&d, &a);
        d = c.sub(&b.derivative());
        i += 1;
    }
    Ok(SquareFree { part, factors })
}

/// Sturm chain `p, p′, −rem(…), …`, each member scaled by a positive
/// constant to keep coefficients small (sign counts are unaffected).
pub fn sturm_sequence(p: &RationalPoly) -> Vec<RationalPoly> {
    let mut seq = vec![p.clone()];
    let mut prev = p.clone();
    let mut cur = p.derivative();
    while !cur.is_zero() {
        let lead = Signed::abs(cur.leading().expect("nonzero"));
        let cur_scaled = cur.scale(&(Rational::one() / lead));
        seq.push(cur_scaled.clone());
        let (_, r) = prev.div_rem(&cur_scaled);
        prev = cur_scaled;
        cur = r.neg();
    }
    seq
}

fn sign_variations(seq: &[RationalPoly], x: &Rational) -> usize {
    let mut count = 0;
    let mut last = 0i8;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if Signed::is_negative(&v) {
            -1
        } else {
            continue;
        };
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

/// Distinct roots of the square-free polynomial behind `seq` in `(lo, hi]`.
pub(crate) fn count_in(seq: &[RationalPoly], lo: &Rational, hi: &Rational) -> usize {
    sign_variations(seq, lo) - sign_variations(seq, hi)
}

/// Number of distinct real roots of `p` in `(lo, hi]`.
pub fn sturm_count(p: &RationalPoly, lo: &Rational, hi: &Rational) -> Result<usize> {
    let sf = square_free_part(p)?;
    Ok(count_in(&sturm_sequence(&sf.part), lo, hi))
}

/// Cauchy bound `1 + max |cᵢ / c_n|`: every root lies strictly inside it.
pub fn cauchy_bound(p: &RationalPoly) -> Rational {
    let lead = p.leading().cloned().unwrap_or_else(Rational::one);
    let max = p.coeffs()[..p.coeffs().len().saturating_sub(1)]
        .iter()
        .map(|c| Signed::abs(&(c / &lead)))
        .fold(Rational::zero(), |m, c| if c > m { c } else { m });
    Rational::one() + max
}

/// Leading coefficient of the primitive integer multiple of `p`. Every
/// rational root `a/b` in lowest terms has `b` dividing it.
fn primitive_leading(p: &RationalPoly) -> BigInt {
    let lcm = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let content = p
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .fold(BigInt::zero(), |g, n| g.gcd(&n));
    let lead = (p.leading().expect("nonzero") * Rational::from_integer(lcm)).to_integer();
    (lead / content).abs()
}

/// An interval containing exactly one root of a square-free polynomial.
#[derive(Debug, Clone)]
pub struct IsolatedRootInterval {
    lo: Rational,
    hi: Rational,
    multiplicity: usize,
    exact_value: Option<Rational>,
    squarefree: Arc<RationalPoly>,
}

impl PartialEq for IsolatedRootInterval {
    fn eq(&self, other: &Self) -> bool {
        self.lo == other.lo
            && self.hi == other.hi
            && self.multiplicity == other.multiplicity
            && self.exact_value == other.exact_value
    }
}

impl IsolatedRootInterval {
    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn multiplicity(&self) -> usize {
        self.multiplicity
    }

    /// Present when the root is rational; then `lo == hi == value`.
    pub fn exact_value(&self) -> Option<&Rational> {
        self.exact_value.as_ref()
    }

    /// The square-free polynomial whose single root this interval isolates.
    pub fn squarefree(&self) -> &RationalPoly {
        &self.squarefree
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn approx_f64(&self) -> f64 {
        f64::from_rational(&self.midpoint())
    }
}

struct Isolator {
    q: Arc<RationalPoly>,
    seq: Vec<RationalPoly>,
    sf: SquareFree,
    lead: BigInt,
}

impl Isolator {
    fn exact(&self, r: Rational) -> IsolatedRootInterval {
        IsolatedRootInterval {
            lo: r.clone(),
            hi: r.clone(),
            multiplicity: self.sf.multiplicity_of(&r),
            exact_value: Some(r),
            squarefree: self.q.clone(),
        }
    }

    fn bisect(
        &self,
        lo: Rational,
        hi: Rational,
        count: usize,
        out: &mut Vec<(Rational, Rational)>,
    ) {
        match count {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / Rational::from_integer(2.into());
                let left = count_in(&self.seq, &lo, &mid);
                self.bisect(lo, mid.clone(), left, out);
                self.bisect(mid, hi, count - left, out);
            }
        }
    }

    /// Turns `(lo, hi]` holding one root into a closed isolating interval
    /// whose endpoints are not roots, or an exact root.
    fn finalize(&self, mut lo: Rational, mut hi: Rational) -> IsolatedRootInterval {
        let q = &*self.q;
        let two = Rational::from_integer(2.into());
        if q.eval(&hi).is_zero() {
            return self.exact(hi);
        }
        // The root is now strictly inside; move `lo` off any root it sits on.
        while q.eval(&lo).is_zero() {
            let mid = (&lo + &hi) / &two;
            if count_in(&self.seq, &lo, &mid) == 1 {
                if q.eval(&mid).is_zero() {
                    return self.exact(mid);
                }
                hi = mid;
            } else {
                lo = mid;
            }
        }

        // A rational root a/b has b | lead, hence lies on the grid
        // (1/lead)·ℤ. Shrink below the grid spacing and test the one
        // candidate that can remain.
        let spacing = Rational::new(BigInt::one(), self.lead.clone());
        let lo_positive = q.eval(&lo).is_positive();
        while &hi - &lo >= spacing {
            let mid = (&lo + &hi) / &two;
            let v = q.eval(&mid);
            if v.is_zero() {
                return self.exact(mid);
            }
            if v.is_positive() == lo_positive {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let lead = Rational::from_integer(self.lead.clone());
        let candidate = (&lo * &lead).ceil() / &lead;
        if candidate <= hi && q.eval(&candidate).is_zero() {
            return self.exact(candidate);
        }

        let multiplicity = self
            .sf
            .factors
            .iter()
            .find(|(f, _)| count_in(&sturm_sequence(f), &lo, &hi) > 0)
            .map_or(1, |(_, m)| *m);
        IsolatedRootInterval {
            lo,
            hi,
            multiplicity,
            exact_value: None,
            squarefree: self.q.clone(),
        }
    }
}

/// Isolates every root of `p` in `[0, ∞)`, in ascending order. Rational
/// roots are reported exactly.
pub fn isolate_nonnegative_roots<S: Scalar>(
    p: &CentralPoly<S>,
) -> Result<Vec<IsolatedRootInterval>> {
    let sf = square_free_part(p)?;
    let q = sf.part.clone();
    if q.degree() == Some(0) {
        return Ok(Vec::new());
    }
    let iso = Isolator {
        seq: sturm_sequence(&q),
        lead: primitive_leading(&q),
        q: Arc::new(q),
        sf,
    };

    let mut out = Vec::new();
    let zero = Rational::zero();
    if iso.q.eval(&zero).is_zero() {
        out.push(iso.exact(zero.clone()));
    }
    let bound = cauchy_bound(&iso.q);
    let count = count_in(&iso.seq, &zero, &bound);
    let mut raw = Vec::new();
    iso.bisect(zero, bound, count, &mut raw);
    out.extend(raw.into_iter().map(|(lo, hi)| iso.finalize(lo, hi)));
    Ok(out)
}

/// Bisects an isolating interval until its width is at most
/// `target_width`. Exact and degenerate intervals come back unchanged.
pub fn refine_root(
    interval: &IsolatedRootInterval,
    target_width: &Rational,
) -> IsolatedRootInterval {
    if interval.exact_value.is_some() || interval.lo == interval.hi {
        return interval.clone();
    }
    let q = &*interval.squarefree;
    let two = Rational::from_integer(2.into());
    let (mut lo, mut hi) = (interval.lo.clone(), interval.hi.clone());
    let lo_positive = q.eval(&lo).is_positive();
    while &hi - &lo > *target_width {
        let mid = (&lo + &hi) / &two;
        let v = q.eval(&mid);
        if v.is_zero() {
            return IsolatedRootInterval {
                lo: mid.clone(),
                hi: mid.clone(),
                exact_value: Some(mid),
                ..interval.clone()
            };
        }
        if v.is_positive() == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    IsolatedRootInterval {
        lo,
        hi,
        ..interval.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn poly(c: &[i64]) -> RationalPoly {
        RationalPoly::from_i64s(c)
    }

    #[test]
    fn square_free_examples() {
        let p = poly(&[2, -3, 1]);
        let sf = square_free_part(&p).unwrap();
        assert_eq!(sf.part, p);
        assert_eq!(sf.factors, vec![(p, 1)]);

        let sq = poly(&[1, 2, 1]);
        let sf = square_free_part(&sq).unwrap();
        assert_eq!(sf.part, poly(&[1, 1]));
        assert_eq!(sf.factors, vec![(poly(&[1, 1]), 2)]);
        assert_eq!(sf.multiplicity_of(&q(-1, 1)), 2);

        let n = poly(&[0, 1]);
        assert_eq!(square_free_part(&n).unwrap().part, n);

        // (N-1)(N-2)^2(N-3)^3
        let p = poly(&[-1, 1])
            .mul(&poly(&[-2, 1]).mul(&poly(&[-2, 1])))
            .mul(&poly(&[-3, 1]).mul(&poly(&[-3, 1])).mul(&poly(&[-3, 1])));
        let sf = square_free_part(&p).unwrap();
        assert_eq!(
            sf.part,
            poly(&[-1, 1]).mul(&poly(&[-2, 1])).mul(&poly(&[-3, 1]))
        );
        assert_eq!(sf.multiplicity_of(&q(1, 1)), 1);
        assert_eq!(sf.multiplicity_of(&q(2, 1)), 2);
        assert_eq!(sf.multiplicity_of(&q(3, 1)), 3);
        assert_eq!(sf.multiplicity_of(&q(4, 1)), 0);

        assert_eq!(
            square_free_part(&RationalPoly::zero()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn isolation_examples() {
        let roots = isolate_nonnegative_roots(&poly(&[2, -3, 1])).unwrap();
        let values: Vec<_> = roots.iter().map(|r| r.exact_value().cloned()).collect();
        assert_eq!(values, vec![Some(q(1, 1)), Some(q(2, 1))]);

        assert!(isolate_nonnegative_roots(&poly(&[1, 2, 1]))
            .unwrap()
            .is_empty());

        let roots = isolate_nonnegative_roots(&poly(&[-2, 0, 1])).unwrap();
        assert_eq!(roots.len(), 1);
        assert!(roots[0].exact_value().is_none());
        let sqrt2 = std::f64::consts::SQRT_2;
        assert!(roots[0].lo().to_f64() < sqrt2 && sqrt2 < roots[0].hi().to_f64());

        assert!(matches!(
            isolate_nonnegative_roots(&RationalPoly::zero()),
            Err(Error::ZeroPolynomial)
        ));
    }

    #[test]
    fn zero_and_fractional_roots() {
        // N (N - 1/3) (N + 5) (3N - 7)
        let p = poly(&[0, 1])
            .mul(&RationalPoly::linear_root(q(1, 3)))
            .mul(&poly(&[5, 1]))
            .mul(&poly(&[-7, 3]));
        let roots = isolate_nonnegative_roots(&p).unwrap();
        let values: Vec<_> = roots
            .iter()
            .map(|r| r.exact_value().cloned().unwrap())
            .collect();
        assert_eq!(values, vec![q(0, 1), q(1, 3), q(7, 3)]);
        assert!(roots.iter().all(|r| r.multiplicity() == 1));
    }

    #[test]
    fn adjacent_roots_on_bisection_points() {
        // Roots exactly on dyadic midpoints of the initial interval.
        let p = poly(&[-1, 1]).mul(&poly(&[-2, 1])).mul(&poly(&[-4, 1]));
        let roots = isolate_nonnegative_roots(&p).unwrap();
        let values: Vec<_> = roots
            .iter()
            .map(|r| r.exact_value().cloned().unwrap())
            .collect();
        assert_eq!(values, vec![q(1, 1), q(2, 1), q(4, 1)]);
    }

    #[test]
    fn irrational_root_multiplicity() {
        // (N^2 - 2)^2 (N - 1)
        let base = poly(&[-2, 0, 1]);
        let p = base.mul(&base).mul(&poly(&[-1, 1]));
        let roots = isolate_nonnegative_roots(&p).unwrap();
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].exact_value(), Some(&q(1, 1)));
        assert_eq!(roots[0].multiplicity(), 1);
        assert!(roots[1].exact_value().is_none());
        assert_eq!(roots[1].multiplicity(), 2);
    }

    #[test]
    fn refinement() {
        let roots = isolate_nonnegative_roots(&poly(&[-2, 0, 1])).unwrap();
        let width = q(1, 1 << 40);
        let refined = refine_root(&roots[0], &width);
        assert!(refined.width() <= width);
        let lo = refined.lo();
        let hi = refined.hi();
        assert!(lo * lo < q(2, 1) && q(2, 1) < hi * hi);
        let mid = refined.midpoint().to_f64();
        assert!((mid * mid - 2.0).abs() < 1e-11);
        assert_eq!(refine_root(&refined, &width), refined);

        let exact = isolate_nonnegative_roots(&poly(&[-1, 1])).unwrap();
        assert_eq!(refine_root(&exact[0], &width), exact[0]);
    }

    #[test]
    fn sturm_count_matches_bound() {
        let p = poly(&[-6, 11, -6, 1]); // (N-1)(N-2)(N-3)
        let bound = cauchy_bound(&p);
        assert_eq!(sturm_count(&p, &q(0, 1), &bound).unwrap(), 3);
        assert_eq!(sturm_count(&p, &q(1, 1), &q(2, 1)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &q(0, 1), &q(1, 1)).unwrap(), 1);
    }

    #[test]
    fn float_input_is_rationalized_exactly() {
        let p = CentralPoly::<f64>::new(vec![0.5, -1.5, 1.0]); // (N - 1)(N - 1/2)
        let roots = isolate_nonnegative_roots(&p).unwrap();
        let values: Vec<_> = roots
            .iter()
            .map(|r| r.exact_value().cloned().unwrap())
            .collect();
        assert_eq!(values, vec![q(1, 2), q(1, 1)]);
    }
}
