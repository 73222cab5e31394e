//! Polynomial files and JSON rendering of results.

use std::fmt;
use std::str::FromStr;

use cdpoly::{
    parse_rational, AlgPoly, Algebra, Element, Error, NormValue, Rational, RootResult, Scalar,
    ScalarMode, ScalarValue,
};
use serde_json::{json, Map, Number, Value};

/// A failure reported to the user, tagged with the exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input: exit 1.
    Usage(String),
    /// A computed result failed its own check: exit 2.
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Verification(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "error: {msg}"),
            CliError::Verification(msg) => write!(f, "verification failed: {msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        match err {
            Error::InternalConsistency(_) => CliError::Verification(err.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// A number as written in the JSON text, before a mode is chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum RawScalar {
    Number(String),
    Text(String),
}

impl RawScalar {
    fn from_json(value: &Value, what: &str) -> CliResult<Self> {
        match value {
            Value::Number(n) => Ok(RawScalar::Number(n.to_string())),
            Value::String(s) => Ok(RawScalar::Text(s.clone())),
            other => Err(usage(format!(
                "{what}: expected a number or a rational string, got {other}"
            ))),
        }
    }

    /// Numbers keep their exact decimal value in exact mode. Strings are
    /// accepted only in exact mode.
    pub fn resolve(&self, mode: ScalarMode) -> CliResult<ScalarValue> {
        match (self, mode) {
            (RawScalar::Number(s) | RawScalar::Text(s), ScalarMode::Exact) => {
                Ok(ScalarValue::Exact(parse_rational(s)?))
            }
            (RawScalar::Number(s), ScalarMode::Float) => {
                let v = f64::from_str(s).map_err(|_| usage(format!("not a number: {s}")))?;
                if !v.is_finite() {
                    return Err(usage(format!("{s} does not fit in a binary64 float")));
                }
                Ok(ScalarValue::Float(v))
            }
            (RawScalar::Text(s), ScalarMode::Float) => Err(usage(format!(
                "rational string \"{s}\" is only allowed in exact mode"
            ))),
        }
    }

    pub fn to_scalar<S: Scalar>(&self) -> CliResult<S> {
        Ok(self.resolve(S::MODE)?.into_scalar()?)
    }
}

impl FromStr for RawScalar {
    type Err = CliError;

    /// Command-line values: plain numbers, or `p/q`.
    fn from_str(s: &str) -> CliResult<Self> {
        let s = s.trim();
        if s.contains('/') {
            Ok(RawScalar::Text(s.to_string()))
        } else {
            Ok(RawScalar::Number(s.to_string()))
        }
    }
}

/// Parsed but not yet typed contents of a polynomial file.
#[derive(Debug, Clone)]
pub struct PolynomialFile {
    pub gammas: Vec<RawScalar>,
    pub mode: Option<ScalarMode>,
    pub coefficients: Vec<Vec<RawScalar>>,
}

fn scalar_list(value: &Value, what: &str) -> CliResult<Vec<RawScalar>> {
    value
        .as_array()
        .ok_or_else(|| usage(format!("{what} must be a list")))?
        .iter()
        .map(|v| RawScalar::from_json(v, what))
        .collect()
}

impl PolynomialFile {
    pub fn parse(text: &str) -> CliResult<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|e| usage(format!("malformed JSON: {e}")))?;
        let obj = value
            .as_object()
            .ok_or_else(|| usage("the input must be a JSON object"))?;
        for key in obj.keys() {
            if !["gammas", "mode", "coefficients"].contains(&key.as_str()) {
                return Err(usage(format!("unknown field \"{key}\"")));
            }
        }
        let gammas = scalar_list(
            obj.get("gammas")
                .ok_or_else(|| usage("missing \"gammas\""))?,
            "gammas",
        )?;
        let mode = match obj.get("mode") {
            None => None,
            Some(Value::String(s)) => Some(s.parse::<ScalarMode>()?),
            Some(other) => {
                return Err(usage(format!(
                    "mode must be \"exact\" or \"float\", got {other}"
                )))
            }
        };
        let coefficients = obj
            .get("coefficients")
            .ok_or_else(|| usage("missing \"coefficients\""))?
            .as_array()
            .ok_or_else(|| usage("coefficients must be a list of coefficient vectors"))?
            .iter()
            .map(|v| scalar_list(v, "coefficient vector"))
            .collect::<CliResult<Vec<_>>>()?;
        let dim = 1usize
            .checked_shl(gammas.len() as u32)
            .filter(|_| gammas.len() <= cdpoly::MAX_HEIGHT)
            .ok_or_else(|| {
                usage(format!(
                    "at most {} gammas are supported",
                    cdpoly::MAX_HEIGHT
                ))
            })?;
        for (k, c) in coefficients.iter().enumerate() {
            if c.len() != dim {
                return Err(usage(format!(
                    "coefficient {k} has length {}, expected {dim} for {} gammas",
                    c.len(),
                    gammas.len()
                )));
            }
        }
        Ok(PolynomialFile {
            gammas,
            mode,
            coefficients,
        })
    }

    /// The command-line mode wins over the file's; exact when neither is set.
    pub fn effective_mode(&self, flag: Option<ScalarMode>) -> ScalarMode {
        flag.or(self.mode).unwrap_or(ScalarMode::Exact)
    }

    pub fn algebra<S: Scalar>(&self) -> CliResult<Algebra<S>> {
        let gammas = self
            .gammas
            .iter()
            .map(RawScalar::to_scalar)
            .collect::<CliResult<Vec<S>>>()?;
        Ok(Algebra::new(gammas)?)
    }

    pub fn polynomial<S: Scalar>(&self) -> CliResult<AlgPoly<S>> {
        let alg = self.algebra::<S>()?;
        let vectors = self
            .coefficients
            .iter()
            .map(|c| {
                c.iter()
                    .map(RawScalar::to_scalar)
                    .collect::<CliResult<Vec<S>>>()
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(AlgPoly::from_coeff_vectors(&alg, vectors)?)
    }
}

/// Parses a JSON list of scalars given on the command line.
pub fn parse_vector<S: Scalar>(text: &str, what: &str) -> CliResult<Vec<S>> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| usage(format!("{what}: malformed JSON: {e}")))?;
    scalar_list(&value, what)?
        .iter()
        .map(RawScalar::to_scalar)
        .collect()
}

/// A list of scalars: JSON (`[-1,-1]`) or comma separated (`-1,-1`).
pub fn parse_scalar_list(text: &str) -> CliResult<Vec<RawScalar>> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        let value: Value =
            serde_json::from_str(trimmed).map_err(|e| usage(format!("malformed list: {e}")))?;
        return scalar_list(&value, "gammas");
    }
    trimmed
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(RawScalar::from_str)
        .collect()
}

/// Exact values: integers as JSON numbers, other rationals as `"p/q"`.
/// Floats: JSON numbers with 17 significant digits.
pub trait Render {
    fn render(&self) -> Value;
}

impl Render for Rational {
    fn render(&self) -> Value {
        if self.is_integer() {
            Value::Number(Number::from_str(&self.numer().to_string()).expect("integer literal"))
        } else {
            Value::String(format!("{}/{}", self.numer(), self.denom()))
        }
    }
}

impl Render for f64 {
    fn render(&self) -> Value {
        if !self.is_finite() {
            return Value::Null;
        }
        Value::Number(Number::from_str(&format!("{self:.16e}")).expect("finite float literal"))
    }
}

pub trait CliScalar: Scalar + Render + cdpoly::random::RandomScalar {}
impl<T: Scalar + Render + cdpoly::random::RandomScalar> CliScalar for T {}

pub fn render_element<S: CliScalar>(x: &Element<S>) -> Value {
    Value::Array(x.coeffs().iter().map(Render::render).collect())
}

pub fn render_file<S: CliScalar>(p: &AlgPoly<S>) -> Value {
    json!({
        "gammas": p.algebra().gammas().iter().map(Render::render).collect::<Vec<_>>(),
        "mode": S::MODE.to_string(),
        "coefficients": p.coeffs().iter().map(render_element).collect::<Vec<_>>(),
    })
}

pub fn render_root<S: CliScalar>(r: &RootResult<S>) -> Value {
    let mut obj = Map::new();
    obj.insert("kind".into(), json!(format!("{:?}", r.kind).to_lowercase()));
    obj.insert("norm".into(), r.norm.value().render());
    if let NormValue::Interval { lo, hi, .. } = &r.norm {
        obj.insert("norm_interval".into(), json!([lo.render(), hi.render()]));
    }
    obj.insert(
        "root".into(),
        r.root.as_ref().map_or(Value::Null, render_element),
    );
    obj.insert("residual".into(), r.residual.render());
    obj.insert("exact".into(), json!(r.exact));
    obj.insert("multiplicity".into(), json!(r.multiplicity));
    obj.insert("witness_available".into(), json!(r.witness_available));
    obj.insert("experimental".into(), json!(r.experimental));
    Value::Object(obj)
}
