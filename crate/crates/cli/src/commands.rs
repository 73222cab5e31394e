use cdpoly::solver::{generalized_alt_roots, ScanParams};
use cdpoly::{alt_roots, run_suite, verify_alt_root, AlgPoly, Algebra, SolveOptions};
use serde_json::{json, Value};

use crate::io::{
    render_element, render_file, render_root, usage, CliError, CliResult, CliScalar,
    PolynomialFile, RawScalar, Render,
};

/// Largest height `table` will print.
pub const MAX_TABLE_HEIGHT: usize = 8;

pub fn alt_roots_cmd<S: CliScalar>(
    file: &PolynomialFile,
    opts: &SolveOptions,
    experimental: bool,
) -> CliResult<Value> {
    if experimental {
        // The scan runs in binary64 whatever the input mode.
        let f = file.polynomial::<S>()?.map_scalars(|c| Ok(c.to_f64()))?;
        let roots = generalized_alt_roots(&f, opts, &ScanParams::default())?;
        recheck(&f, &roots, opts)?;
        return Ok(Value::Array(roots.iter().map(render_root).collect()));
    }
    let f = file.polynomial::<S>()?;
    let roots = alt_roots(&f, opts)?;
    recheck(&f, &roots, opts)?;
    Ok(Value::Array(roots.iter().map(render_root).collect()))
}

/// Every emitted root must pass the same check `eval` would apply.
fn recheck<S: CliScalar>(
    f: &AlgPoly<S>,
    roots: &[cdpoly::RootResult<S>],
    opts: &SolveOptions,
) -> CliResult<()> {
    for r in roots {
        let Some(lam) = &r.root else { continue };
        let residual = verify_alt_root(f, lam, &opts.tolerance)?;
        let ok = if r.exact {
            residual.is_zero()
        } else {
            residual.to_f64() <= opts.tolerance.bound(f.max_abs())
        };
        if !ok {
            return Err(CliError::Verification(format!(
                "root {lam} has residual {residual}"
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EvalKind {
    Regular,
    Alternating,
}

pub fn eval_cmd<S: CliScalar>(file: &PolynomialFile, at: &str, kind: EvalKind) -> CliResult<Value> {
    let f = file.polynomial::<S>()?;
    let point = crate::io::parse_vector::<S>(at, "--at")?;
    let lam = f.algebra().element(point)?;
    let value = match kind {
        EvalKind::Regular => f.eval_regular(&lam)?,
        EvalKind::Alternating => f.eval_alternating(&lam)?,
    };
    Ok(render_element(&value))
}

pub fn friend_cmd<S: CliScalar>(file: &PolynomialFile, gamma: &RawScalar) -> CliResult<Value> {
    let f = file.polynomial::<S>()?;
    if f.is_zero() {
        let alg = f.algebra().double(gamma.to_scalar()?)?;
        return Ok(render_file(&AlgPoly::zero(&alg)));
    }
    Ok(render_file(&f.alternating_friend(&gamma.to_scalar()?)?))
}

pub fn decompose_cmd<S: CliScalar>(file: &PolynomialFile) -> CliResult<Value> {
    let h = file.polynomial::<S>()?;
    let Some(gamma) = h.algebra().gammas().last().cloned() else {
        return Err(usage(
            "decompose needs a doubled algebra (at least one gamma)",
        ));
    };
    let (f, g) = h.decompose_doubling()?;
    let back = AlgPoly::recompose(&f, &g, &gamma)?;
    if back != h {
        return Err(CliError::Verification(
            "recomposing f and g does not give back h".into(),
        ));
    }
    Ok(json!({ "f": render_file(&f), "g": render_file(&g) }))
}

pub fn check_cmd<S: CliScalar>(
    gammas: &[RawScalar],
    seed: u64,
    iterations: usize,
) -> CliResult<(Value, bool)> {
    let gammas = gammas
        .iter()
        .map(RawScalar::to_scalar)
        .collect::<CliResult<Vec<S>>>()?;
    let alg = Algebra::new(gammas)?;
    let report = run_suite(&alg, seed, iterations)?;
    let checks: Vec<Value> = report
        .checks
        .iter()
        .map(|c| {
            json!({
                "name": c.name,
                "passed": c.passed(),
                "cases": c.cases,
                "failures": c.failures,
                "counterexample": c.counterexample,
                "note": c.note,
            })
        })
        .collect();
    let passed = report.all_passed();
    let value = json!({
        "gammas": alg.gammas().iter().map(Render::render).collect::<Vec<_>>(),
        "mode": report.mode.to_string(),
        "seed": report.seed,
        "iterations": report.iterations,
        "passed": passed,
        "checks": checks,
    });
    Ok((value, passed))
}

fn basis_label<S: CliScalar>(coeff: &S, index: usize) -> String {
    if coeff.is_one() {
        format!("e{index}")
    } else if (-coeff.clone()).is_one() {
        format!("-e{index}")
    } else {
        format!("{coeff}*e{index}")
    }
}

pub fn table_cmd<S: CliScalar>(gammas: &[RawScalar]) -> CliResult<Value> {
    if gammas.len() > MAX_TABLE_HEIGHT {
        return Err(usage(format!(
            "table prints at most {MAX_TABLE_HEIGHT} doublings"
        )));
    }
    let gammas = gammas
        .iter()
        .map(RawScalar::to_scalar)
        .collect::<CliResult<Vec<S>>>()?;
    let alg = Algebra::new(gammas)?;
    let basis: Vec<_> = (0..alg.dim())
        .map(|i| alg.basis(i))
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::with_capacity(alg.dim());
    for a in &basis {
        let mut row = Vec::with_capacity(alg.dim());
        for b in &basis {
            let product = a.mul(b)?;
            let (index, coeff) = product
                .coeffs()
                .iter()
                .enumerate()
                .find(|(_, c)| !c.is_zero())
                .ok_or_else(|| {
                    CliError::Verification("a product of basis elements vanished".into())
                })?;
            row.push(Value::String(basis_label(coeff, index)));
        }
        rows.push(Value::Array(row));
    }
    Ok(json!({
        "basis": (0..alg.dim()).map(|i| format!("e{i}")).collect::<Vec<_>>(),
        "table": rows,
    }))
}
