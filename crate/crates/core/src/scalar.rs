//! Base-field scalars.
//!
//! Two scalar modes are supported: exact rationals backed by arbitrary
//! precision integers, and IEEE binary64 reals. The mode is a type parameter
//! of every algebraic object, so two modes can never meet inside one
//! operation. [`ScalarValue`] is the runtime-tagged form used at the input
//! boundary, where a mismatch is reported as [`Error::ModeMismatch`].

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarMode {
    Exact,
    Float,
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarMode::Exact => f.write_str("exact"),
            ScalarMode::Float => f.write_str("float"),
        }
    }
}

impl FromStr for ScalarMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(ScalarMode::Exact),
            "float" => Ok(ScalarMode::Float),
            other => Err(Error::Parse(other.to_string())),
        }
    }
}

/// Zero test used in float mode: `|x| <= abs_epsilon + rel_epsilon * scale`,
/// with `scale` supplied by the caller. Exact mode uses zero for both.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceContext {
    pub abs_epsilon: f64,
    pub rel_epsilon: f64,
}

impl ToleranceContext {
    pub const DEFAULT_ABS: f64 = 1e-12;
    pub const DEFAULT_REL: f64 = 1e-9;

    pub fn new(abs_epsilon: f64, rel_epsilon: f64) -> Result<Self> {
        if !(abs_epsilon >= 0.0 && rel_epsilon >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tolerances must be nonnegative, got abs={abs_epsilon} rel={rel_epsilon}"
            )));
        }
        Ok(ToleranceContext {
            abs_epsilon,
            rel_epsilon,
        })
    }

    pub const fn exact() -> Self {
        ToleranceContext {
            abs_epsilon: 0.0,
            rel_epsilon: 0.0,
        }
    }

    /// Same epsilon for both terms, so the bound is `eps * (1 + scale)`.
    pub fn uniform(eps: f64) -> Result<Self> {
        Self::new(eps, eps)
    }

    pub fn bound(&self, scale: f64) -> f64 {
        self.abs_epsilon + self.rel_epsilon * scale
    }

    pub fn is_negligible(&self, x: f64, scale: f64) -> bool {
        x.abs() <= self.bound(scale)
    }
}

impl Default for ToleranceContext {
    fn default() -> Self {
        ToleranceContext {
            abs_epsilon: Self::DEFAULT_ABS,
            rel_epsilon: Self::DEFAULT_REL,
        }
    }
}

/// An element of the base field.
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Signed
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    const MODE: ScalarMode;

    fn from_i64(v: i64) -> Self;

    fn from_rational(r: &Rational) -> Self;

    /// Exact rational value. Every finite binary float is a rational.
    fn to_rational(&self) -> Result<Rational>;

    fn to_f64(&self) -> f64;

    /// Tolerance appropriate for this mode when the caller has none.
    fn default_tolerance() -> ToleranceContext;

    /// Zero test: exact in exact mode, `ctx`-relative in float mode.
    fn is_negligible(&self, ctx: &ToleranceContext, scale: f64) -> bool;

    /// Square root when it exists in this field: perfect squares only in
    /// exact mode, any nonnegative value in float mode.
    fn sqrt_checked(&self) -> Option<Self>;
}

impl Scalar for Rational {
    const MODE: ScalarMode = ScalarMode::Exact;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_rational(&self) -> Result<Rational> {
        Ok(self.clone())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn default_tolerance() -> ToleranceContext {
        ToleranceContext::exact()
    }

    fn is_negligible(&self, _ctx: &ToleranceContext, _scale: f64) -> bool {
        self.is_zero()
    }

    fn sqrt_checked(&self) -> Option<Self> {
        if Signed::is_negative(self) {
            return None;
        }
        let n = self.numer().sqrt();
        let d = self.denom().sqrt();
        if &n * &n == *self.numer() && &d * &d == *self.denom() {
            Some(Rational::new(n, d))
        } else {
            None
        }
    }
}

impl Scalar for f64 {
    const MODE: ScalarMode = ScalarMode::Float;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_rational(&self) -> Result<Rational> {
        Rational::from_float(*self).ok_or(Error::NonFinite)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn default_tolerance() -> ToleranceContext {
        ToleranceContext::default()
    }

    fn is_negligible(&self, ctx: &ToleranceContext, scale: f64) -> bool {
        ctx.is_negligible(*self, scale)
    }

    fn sqrt_checked(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
}

/// Runtime-tagged scalar, as read from an input file.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalarValue {
    Exact(Rational),
    Float(f64),
}

impl ScalarValue {
    pub fn mode(&self) -> ScalarMode {
        match self {
            ScalarValue::Exact(_) => ScalarMode::Exact,
            ScalarValue::Float(_) => ScalarMode::Float,
        }
    }

    /// Converts into the statically chosen mode. Never coerces.
    pub fn into_scalar<S: Scalar>(self) -> Result<S> {
        if self.mode() != S::MODE {
            return Err(Error::ModeMismatch {
                expected: S::MODE,
                found: self.mode(),
            });
        }
        match self {
            ScalarValue::Exact(r) => Ok(S::from_rational(&r)),
            ScalarValue::Float(x) => {
                if !x.is_finite() {
                    return Err(Error::NonFinite);
                }
                // S is f64 here, so the rational round trip is lossless.
                Ok(S::from_rational(&x.to_rational()?))
            }
        }
    }
}

/// Parses `p/q`, an integer, or a decimal with optional exponent into an
/// exact rational. `"0.1"` is one tenth, not the nearest binary float.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let err = || Error::Parse(text.to_string());
    if s.is_empty() {
        return Err(err());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(n, d));
    }

    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => (&s[..pos], s[pos + 1..].parse::<i64>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if (int_part.is_empty() && frac_part.is_empty())
        || !int_part
            .bytes()
            .chain(frac_part.bytes())
            .all(|b| b.is_ascii_digit())
    {
        return Err(err());
    }
    let all_digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(BigInt::from_str(&all_digits).map_err(|_| err())?);
    let shift = exponent - frac_part.len() as i64;
    let ten = BigInt::from(10u32);
    let power = Rational::from_integer(num_traits::pow(ten, shift.unsigned_abs() as usize));
    if shift >= 0 {
        value *= power;
    } else {
        value /= power;
    }
    Ok(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn parses_rational_forms() {
        assert_eq!(parse_rational("3/4").unwrap(), q(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), q(-3, 4));
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("-1.25e-3").unwrap(), q(-1, 800));
        assert_eq!(parse_rational("2E2").unwrap(), q(200, 1));
        assert_eq!(parse_rational("7").unwrap(), q(7, 1));
        assert_eq!(parse_rational("1.0000000000000000e0").unwrap(), q(1, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn rationals_stay_in_lowest_terms() {
        let r = q(10, -4);
        assert_eq!(r.numer(), &BigInt::from(-5));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn mode_mismatch_is_an_error() {
        let v = ScalarValue::Exact(q(1, 2));
        assert_eq!(
            v.clone().into_scalar::<f64>(),
            Err(Error::ModeMismatch {
                expected: ScalarMode::Float,
                found: ScalarMode::Exact
            })
        );
        assert_eq!(v.into_scalar::<Rational>().unwrap(), q(1, 2));
        assert_eq!(ScalarValue::Float(0.5).into_scalar::<f64>().unwrap(), 0.5);
        assert!(ScalarValue::Float(0.5).into_scalar::<Rational>().is_err());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(q(9, 4).sqrt_checked(), Some(q(3, 2)));
        assert_eq!(q(2, 1).sqrt_checked(), None);
        assert_eq!(q(-1, 1).sqrt_checked(), None);
        assert_eq!(4.0f64.sqrt_checked(), Some(2.0));
        assert_eq!((-4.0f64).sqrt_checked(), None);
    }

    #[test]
    fn float_to_rational_is_exact() {
        assert_eq!(0.5f64.to_rational().unwrap(), q(1, 2));
        assert_eq!(f64::NAN.to_rational(), Err(Error::NonFinite));
        let x = 0.1f64;
        assert_eq!(f64::from_rational(&x.to_rational().unwrap()), x);
    }

    #[test]
    fn tolerance_bound() {
        let ctx = ToleranceContext::uniform(1e-9).unwrap();
        assert!(ctx.is_negligible(2e-9, 1.0));
        assert!(!ctx.is_negligible(3e-9, 1.0));
        assert!(ToleranceContext::new(-1.0, 0.0).is_err());
        assert_eq!(ToleranceContext::default().abs_epsilon, 1e-12);
        assert_eq!(ToleranceContext::default().rel_epsilon, 1e-9);
    }
}
