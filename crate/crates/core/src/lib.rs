//! Cayley-Dickson algebras of any height over exact rationals or `f64`,
//! polynomials over them with regular and alternating evaluation, and a
//! solver for the alternating roots over the division algebras.
//!
//! Every type is generic over [`Scalar`]; `Rational` gives exact results and
//! `f64` gives tolerance-checked ones.
//!
//! ```
//! use cdpoly::{alt_roots, AlgPoly, Algebra, Rational, SolveOptions};
//!
//! let h = Algebra::<Rational>::from_i64s(&[-1, -1])?;
//! let f = AlgPoly::from_i64s(&h, &[&[-1, 0, 0, -1], &[0, 1, 0, 0], &[1, 0, 0, 0]])?;
//! let roots = alt_roots(&f, &SolveOptions::default())?;
//! assert_eq!(roots[0].root, Some(h.element_from_i64s(&[0, 0, 1, 0])?));
//! assert_eq!(roots[1].root, Some(h.element_from_i64s(&[0, 1, 1, 0])?));
//! # Ok::<(), cdpoly::Error>(())
//! ```

pub mod algebra;
pub mod error;
pub mod matrix;
pub mod poly;
pub mod random;
pub mod real_roots;
pub mod scalar;
pub mod solver;
pub mod suite;

pub use algebra::{Algebra, Element, MAX_HEIGHT};
pub use error::{Error, Result};
pub use poly::{AlgPoly, CentralPoly, NormPoly};
pub use real_roots::{isolate_nonnegative_roots, refine_root, IsolatedRootInterval};
pub use scalar::{parse_rational, Rational, Scalar, ScalarMode, ScalarValue, ToleranceContext};
pub use solver::{
    alt_roots, central_polynomial, generalized_alt_roots, odd_degree_existence_check,
    verify_alt_root, NormValue, RootKind, RootResult, ScanParams, SolveOptions,
};
pub use suite::{run_suite, CheckOutcome, SuiteReport};
