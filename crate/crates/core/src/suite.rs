//! Seeded property suite over one algebra: the algebra identities, the
//! alternating-friend correspondence, the doubling decomposition and the
//! evaluation oracles. Backs the `check` command.

use std::fmt::Debug;

use rand::Rng;

use crate::algebra::{Algebra, Element};
use crate::error::Result;
use crate::poly::{AlgPoly, NormPoly};
use crate::random::{
    force_alternating_root, random_element, random_nonzero_element, random_poly, seeded,
    RandomScalar, SeededRng,
};
use crate::scalar::{Scalar, ScalarMode, ToleranceContext};

/// Largest polynomial degree drawn by the polynomial checks.
pub const MAX_DEGREE: usize = 5;

/// Doubling parameters cycled through when a check needs a fresh `γ`.
pub const FRIEND_GAMMAS: [i64; 4] = [-1, 1, 2, -3];

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub counterexample: Option<String>,
    pub note: Option<String>,
}

impl CheckOutcome {
    fn new(name: &'static str) -> Self {
        CheckOutcome {
            name,
            cases: 0,
            failures: 0,
            counterexample: None,
            note: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.counterexample.is_none() {
                self.counterexample = Some(witness());
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub gammas: Vec<String>,
    pub mode: ScalarMode,
    pub seed: u64,
    pub iterations: usize,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }
}

/// Equality: exact in exact mode, relative to the operands' size in float
/// mode.
pub fn same<S: Scalar>(a: &Element<S>, b: &Element<S>) -> bool {
    match S::MODE {
        ScalarMode::Exact => a == b,
        ScalarMode::Float => a.approx_eq(b, &ToleranceContext::default()),
    }
}

fn vanishes<S: Scalar>(a: &Element<S>, scale: f64) -> bool {
    match S::MODE {
        ScalarMode::Exact => a.is_zero(),
        ScalarMode::Float => {
            let ctx = ToleranceContext::default();
            a.coeffs()
                .iter()
                .all(|c| ctx.is_negligible(c.to_f64(), scale))
        }
    }
}

fn same_scalar<S: Scalar>(a: &S, b: &S) -> bool {
    let scale = a.to_f64().abs().max(b.to_f64().abs());
    (a.clone() - b.clone()).is_negligible(&ToleranceContext::default(), scale)
}

fn show(items: &[(&str, &dyn Debug)]) -> String {
    items
        .iter()
        .map(|(k, v)| format!("{k}={v:?}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn check_flexibility<S: RandomScalar>(
    alg: &Algebra<S>,
    rng: &mut SeededRng,
    n: usize,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("flexibility");
    for _ in 0..n {
        let a = random_element(rng, alg);
        let b = random_element(rng, alg);
        let lhs = a.mul(&b)?.mul(&a)?;
        let rhs = a.mul(&b.mul(&a)?)?;
        out.record(same(&lhs, &rhs), || show(&[("a", &a), ("b", &b)]));
    }
    Ok(out)
}

pub fn check_power_associativity<S: RandomScalar>(
    alg: &Algebra<S>,
    rng: &mut SeededRng,
    n: usize,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("power_associativity");
    for _ in 0..n {
        let a = random_element(rng, alg);
        let mut powers = vec![alg.one()];
        for k in 1..=6 {
            powers.push(a.mul(&powers[k - 1])?);
        }
        let mut ok = true;
        for i in 1..6 {
            for j in 1..=6 - i {
                ok &= same(&powers[i].mul(&powers[j])?, &powers[i + j]);
            }
        }
        out.record(ok, || show(&[("a", &a)]));
    }
    Ok(out)
}

pub fn check_quadraticity<S: RandomScalar>(
    alg: &Algebra<S>,
    rng: &mut SeededRng,
    n: usize,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("quadraticity");
    for _ in 0..n {
        let a = random_element(rng, alg);
        let value = a
            .mul(&a)?
            .sub(&a.scale(&a.trace()))?
            .add(&alg.scalar(a.norm()?))?;
        out.record(vanishes(&value, 1.0 + a.max_abs().powi(2)), || {
            show(&[("a", &a)])
        });
    }
    Ok(out)
}

pub fn check_conj_anti_homomorphism<S: RandomScalar>(
    alg: &Algebra<S>,
    rng: &mut SeededRng,
    n: usize,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("conj_anti_homomorphism");
    for _ in 0..n {
        let a = random_element(rng, alg);
        let b = random_element(rng, alg);
        let ok = same(&a.mul(&b)?.conj(), &b.conj().mul(&a.conj())?) && a.conj().conj() == a;
        out.record(ok, || show(&[("a", &a), ("b", &b)]));
    }
    Ok(out)
}

pub fn check_norm_scalarness<S: RandomScalar>(
    alg: &Algebra<S>,
    rng: &mut SeededRng,
    n: usize,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("norm_scalarness");
    for _ in 0..n {
        let a = random_element(rng, alg);
        let left = a.conj().mul(&a)?;
        let right = a.mul(&a.conj())?;
        let ok = match a.norm() {
            Ok(norm) => same(&left, &alg.scalar(norm.clone())) && same(&right, &alg.scalar(norm)),
            Err(_) => false,
        };
        out.record(ok, || show(&[("a", &a)]));
    }
    Ok(out)
}

/// Multiplicativity of the norm. It must hold up to dimension 8; above that
/// the check passes only when a violating pair is found.
pub fn check_composition<S: RandomScalar>(
    alg: &Algebra<S>,
    rng: &mut SeededRng,
    n: usize,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("composition_law");
    let composes = |a: &Element<S>, b: &Element<S>| -> Result<bool> {
        Ok(same_scalar(&a.mul(b)?.norm()?, &(a.norm()? * b.norm()?)))
    };
    if alg.dim() <= 8 {
        for _ in 0..n {
            let a = random_element(rng, alg);
            let b = random_element(rng, alg);
            let ok = composes(&a, &b)?;
            out.record(ok, || show(&[("a", &a), ("b", &b)]));
        }
        return Ok(out);
    }
    match find_composition_violation(alg, rng, n.max(1))? {
        Some((a, b)) => {
            out.cases = 1;
            out.note = Some(format!(
                "norm is not multiplicative above dimension 8; violating pair a={a}, b={b}"
            ));
        }
        None => {
            out.record(false, || {
                "no violating pair found; the norm should not be multiplicative here".into()
            });
        }
    }
    Ok(out)
}

/// Looks for `(a, b)` with `Norm(ab) ≠ Norm(a)·Norm(b)`: first among sums of
/// two basis elements, then among random pairs.
pub fn find_composition_violation<S: RandomScalar>(
    alg: &Algebra<S>,
    rng: &mut SeededRng,
    attempts: usize,
) -> Result<Option<(Element<S>, Element<S>)>> {
    let dim = alg.dim();
    let pair = |i: usize, j: usize| -> Result<Element<S>> { alg.basis(i)?.add(&alg.basis(j)?) };
    let violates = |a: &Element<S>, b: &Element<S>| -> Result<bool> {
        Ok(!same_scalar(&a.mul(b)?.norm()?, &(a.norm()? * b.norm()?)))
    };
    for i in 1..dim {
        for j in i + 1..dim {
            let a = pair(i, j)?;
            for k in 1..dim {
                for l in k + 1..dim {
                    let b = pair(k, l)?;
                    if violates(&a, &b)? {
                        return Ok(Some((a, b)));
                    }
                }
            }
        }
    }
    for _ in 0..attempts {
        let a = random_element(rng, alg);
        let b = random_element(rng, alg);
        if violates(&a, &b)? {
            return Ok(Some((a, b)));
        }
    }
    Ok(None)
}

pub fn check_anisotropy<S: RandomScalar>(
    alg: &Algebra<S>,
    rng: &mut SeededRng,
    n: usize,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("anisotropy");
    for _ in 0..n {
        let a = random_nonzero_element(rng, alg);
        let ok = a.norm()? > S::zero();
        out.record(ok, || show(&[("a", &a)]));
    }
    Ok(out)
}

pub fn check_inverse<S: RandomScalar>(
    alg: &Algebra<S>,
    rng: &mut SeededRng,
    n: usize,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("inverse");
    for _ in 0..n {
        let a = random_nonzero_element(rng, alg);
        let inv = a.inverse()?;
        let ok = same(&inv.mul(&a)?, &alg.one()) && same(&a.mul(&inv)?, &alg.one());
        out.record(ok, || show(&[("a", &a)]));
    }
    Ok(out)
}

pub fn check_left_mul_matrix<S: RandomScalar>(
    alg: &Algebra<S>,
    rng: &mut SeededRng,
    n: usize,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("left_mul_matrix");
    for _ in 0..n {
        let a = random_element(rng, alg);
        let x = random_element(rng, alg);
        let via_matrix = alg.element(a.left_mul_matrix().mul_vec(x.coeffs()))?;
        out.record(same(&via_matrix, &a.mul(&x)?), || {
            show(&[("a", &a), ("x", &x)])
        });
    }
    Ok(out)
}

fn random_degree(rng: &mut SeededRng) -> usize {
    rng.gen_range(0..=MAX_DEGREE)
}

pub fn check_alternating_oracle<S: RandomScalar>(
    alg: &Algebra<S>,
    rng: &mut SeededRng,
    n: usize,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("alternating_oracle");
    for _ in 0..n {
        let degree = random_degree(rng);
        let f = random_poly(rng, alg, degree);
        let lam = random_element(rng, alg);
        let ok = same(
            &f.eval_alternating(&lam)?,
            &f.eval_alternating_literal(&lam)?,
        );
        out.record(ok, || show(&[("f", &f), ("lambda", &lam)]));
    }
    Ok(out)
}

pub fn check_norm_expansion<S: RandomScalar>(
    alg: &Algebra<S>,
    rng: &mut SeededRng,
    n: usize,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("norm_expansion");
    for _ in 0..n {
        let len = rng.gen_range(1..=4);
        let g = NormPoly::new(
            alg.clone(),
            (0..len).map(|_| random_element(rng, alg)).collect(),
        )?;
        let n0 = S::random(rng);
        let ok = same_scalar(&g.norm_expand()?.eval(&n0), &g.eval(&n0).norm()?);
        out.record(ok, || show(&[("g", &g), ("N", &n0)]));
    }
    Ok(out)
}

fn friend_gamma<S: Scalar>(i: usize) -> S {
    S::from_i64(FRIEND_GAMMAS[i % FRIEND_GAMMAS.len()])
}

/// `λ·v` in `CD(A, γ)`.
pub fn times_v<S: Scalar>(doubled: &Algebra<S>, lam: &Element<S>) -> Result<Element<S>> {
    doubled.join(&lam.algebra().zero(), lam)
}

pub fn check_friend_correspondence<S: RandomScalar>(
    alg: &Algebra<S>,
    rng: &mut SeededRng,
    n: usize,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("friend_correspondence");
    for i in 0..n {
        let gamma = friend_gamma::<S>(i);
        let degree = random_degree(rng);
        let f = random_poly(rng, alg, degree);
        let lam = random_element(rng, alg);
        let friend = f.alternating_friend(&gamma)?;
        let lhs = f.eval_alternating(&lam)?.conj();
        let rhs_full = friend.eval_regular(&times_v(friend.algebra(), &lam)?)?;
        let (rhs, rhs_v) = rhs_full.split()?;
        let scale = 1.0 + rhs_full.max_abs();
        let ok = same(&lhs, &rhs) && vanishes(&rhs_v, scale);
        out.record(ok, || {
            show(&[("f", &f), ("lambda", &lam), ("gamma", &gamma)])
        });
    }
    Ok(out)
}

pub fn check_root_transfer<S: RandomScalar>(
    alg: &Algebra<S>,
    rng: &mut SeededRng,
    n: usize,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("root_transfer");
    for i in 0..n {
        let gamma = friend_gamma::<S>(i);
        let degree = 1 + rng.gen_range(0..MAX_DEGREE);
        let lam = random_element(rng, alg);
        let mut f = random_poly(rng, alg, degree);
        if i % 2 == 0 {
            f = force_alternating_root(&f, &lam)?;
        }
        if f.is_zero() {
            continue;
        }
        let friend = f.alternating_friend(&gamma)?;
        let alt = f.eval_alternating(&lam)?;
        let reg = friend.eval_regular(&times_v(friend.algebra(), &lam)?)?;
        let scale = 1.0 + f.max_abs() * (1.0 + lam.max_abs()).powi(degree as i32);
        let ok = vanishes(&alt, scale) == vanishes(&reg, scale);
        out.record(ok, || {
            show(&[("f", &f), ("lambda", &lam), ("gamma", &gamma)])
        });
    }
    Ok(out)
}

/// `λ·v` is a root of `h = f̃ + g̃·v` exactly when `λ` is an alternating
/// root of `f` and `λ̄` one of `g`. Cycles through the four combinations of
/// planted roots so both implications are exercised.
pub fn check_generalized_theorem<S: RandomScalar>(
    alg: &Algebra<S>,
    rng: &mut SeededRng,
    n: usize,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("generalized_theorem");
    for i in 0..n {
        let gamma = friend_gamma::<S>(i / 4);
        let lam = random_element(rng, alg);
        let (df, dg) = (random_degree(rng), random_degree(rng));
        let mut f = random_poly(rng, alg, df);
        let mut g = random_poly(rng, alg, dg);
        if i % 4 == 0 || i % 4 == 1 {
            f = force_alternating_root(&f, &lam)?;
        }
        if i % 4 == 0 || i % 4 == 2 {
            g = force_alternating_root(&g, &lam.conj())?;
        }
        let hpoly = AlgPoly::recompose(&f, &g, &gamma)?;
        let value = hpoly.eval_regular(&times_v(hpoly.algebra(), &lam)?)?;
        let scale = 1.0 + hpoly.max_abs() * (1.0 + lam.max_abs()).powi(df.max(dg) as i32);
        let lhs = vanishes(&value, scale);
        let rhs = vanishes(&f.eval_alternating(&lam)?, scale)
            && vanishes(&g.eval_alternating(&lam.conj())?, scale);
        out.record(lhs == rhs, || {
            show(&[("f", &f), ("g", &g), ("lambda", &lam), ("gamma", &gamma)])
        });
    }
    Ok(out)
}

pub fn check_decomposition<S: RandomScalar>(
    alg: &Algebra<S>,
    rng: &mut SeededRng,
    n: usize,
) -> Result<CheckOutcome> {
    let mut out = CheckOutcome::new("decomposition_round_trip");
    let Some(gamma) = alg.gammas().last().cloned() else {
        out.note = Some("the base field has no doubling to split".into());
        return Ok(out);
    };
    for _ in 0..n {
        let degree = random_degree(rng);
        let hpoly = random_poly(rng, alg, degree);
        let (f, g) = hpoly.decompose_doubling()?;
        let back = AlgPoly::recompose(&f, &g, &gamma)?;
        let ok = back.coeffs().len() == hpoly.coeffs().len()
            && back
                .coeffs()
                .iter()
                .zip(hpoly.coeffs())
                .all(|(a, b)| same(a, b));
        out.record(ok, || show(&[("h", &hpoly)]));
    }
    Ok(out)
}

/// Runs every check with `iterations` cases each.
pub fn run_suite<S: RandomScalar>(
    alg: &Algebra<S>,
    seed: u64,
    iterations: usize,
) -> Result<SuiteReport> {
    let mut rng = seeded(seed);
    let rng = &mut rng;
    let n = iterations;
    let mut checks = vec![
        check_flexibility(alg, rng, n)?,
        check_power_associativity(alg, rng, n)?,
        check_quadraticity(alg, rng, n)?,
        check_conj_anti_homomorphism(alg, rng, n)?,
        check_norm_scalarness(alg, rng, n)?,
        check_composition(alg, rng, n)?,
    ];
    if alg.gammas().iter().all(|g| g.is_negative()) {
        checks.push(check_anisotropy(alg, rng, n)?);
    }
    if alg.division_certified() {
        checks.push(check_inverse(alg, rng, n)?);
    }
    checks.extend([
        check_left_mul_matrix(alg, rng, n)?,
        check_alternating_oracle(alg, rng, n)?,
        check_norm_expansion(alg, rng, n)?,
        check_friend_correspondence(alg, rng, n)?,
        check_root_transfer(alg, rng, n)?,
        check_generalized_theorem(alg, rng, n)?,
        check_decomposition(alg, rng, n)?,
    ]);
    Ok(SuiteReport {
        gammas: alg.gammas().iter().map(|g| g.to_string()).collect(),
        mode: S::MODE,
        seed,
        iterations,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    #[test]
    fn quaternion_suite_passes() {
        let alg = Algebra::<Rational>::from_i64s(&[-1, -1]).unwrap();
        let report = run_suite(&alg, 1, 50).unwrap();
        for c in &report.checks {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn base_field_suite_is_vacuous_but_passes() {
        let alg = Algebra::<Rational>::new(vec![]).unwrap();
        assert!(run_suite(&alg, 2, 20).unwrap().all_passed());
    }

    #[test]
    fn float_suite_passes_on_split_octonions() {
        let alg = Algebra::<f64>::from_i64s(&[-1, 1, -1]).unwrap();
        let report = run_suite(&alg, 3, 50).unwrap();
        for c in &report.checks {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn sedenion_composition_violation_is_reported() {
        let alg = Algebra::<Rational>::from_i64s(&[-1, -1, -1, -1]).unwrap();
        let outcome = check_composition(&alg, &mut seeded(4), 10).unwrap();
        assert!(outcome.passed());
        assert!(outcome.note.unwrap().contains("violating pair"));
    }
}
