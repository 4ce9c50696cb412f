//! Subcommand implementations.

use std::time::Instant;

use funmat::approx::{
    decay_bound, diag_approx, element_approx, funm_approx, select_k, trace_approx, ApproxReport,
};
use funmat::banded::banded_funm;
use funmat::closedform::{analyze, assemble_banded, assemble_tridiag, choose_m, LaurentSymbol};
use funmat::densefun::{
    dense_kernel, enclosure, expm, funm_hermitian, matrix_is_hermitian, trace_funm_hermitian,
    ScalarFunction,
};
use funmat::diagsets::{default_partition, delta_set, u_set};
use funmat::matstore::{DenseMatrix, DiagMatrix};
use funmat::toepdisp::toeplitz_funm;

use crate::args::{Command, FunArgs, InputArgs};
use crate::inputs::{load_input, parse_function, parse_k_range, Input};
use crate::report::{Field, Report};
use crate::CliError;

fn millis(t: Instant) -> Field {
    Field::Float(t.elapsed().as_secs_f64() * 1e3)
}

fn bound_field(r: &ApproxReport) -> Field {
    match r.bound_estimate {
        Some(b) => Field::Float(b),
        None => Field::Text("unavailable".into()),
    }
}

fn pick_k(
    a: &DiagMatrix<f64>,
    f: &ScalarFunction,
    k: Option<usize>,
    tol: Option<f64>,
    tiles: usize,
) -> Result<usize, CliError> {
    if let Some(k) = k {
        return Ok(k);
    }
    let tol = tol.ok_or_else(|| CliError::usage("either --k or --tol is required"))?;
    let enc = enclosure(a);
    select_k(f, &enc, tol, matrix_is_hermitian(a), tiles, 128)
        .ok_or_else(|| CliError::numerical_msg("no degree up to 128 meets the tolerance"))
}

pub fn dispatch(cmd: &Command) -> Result<Report, CliError> {
    match cmd {
        Command::Funm { input, fun, k, tol, block } => funm_cmd(input, fun, *k, *tol, *block),
        Command::Banded { input, fun, k, tol, m } => banded_cmd(input, fun, *k, *tol, *m),
        Command::Toeplitz { input, fun, k, tol, cap } => toeplitz_cmd(input, fun, *k, *tol, *cap),
        Command::Element { input, fun, k, i, j } => element_cmd(input, fun, *k, *i, *j),
        Command::Trace { input, fun, k } => trace_cmd(input, fun, *k),
        Command::Diag { input, fun, k, batch } => diag_cmd(input, fun, *k, *batch),
        Command::Closedform { symbol, fun, n, m, eps, step } => {
            closedform_cmd(symbol, fun, *n, *m, *eps, *step)
        }
        Command::DecayBound { input, fun, norm, tau, k } => {
            decay_cmd(input, fun, *norm, *tau, k)
        }
        Command::Oracle { input, fun, engine, k, batch, block, i, j, m } => {
            oracle_cmd(input, fun, engine, *k, *batch, *block, *i, *j, *m)
        }
    }
}

fn funm_cmd(
    input: &InputArgs,
    fun: &FunArgs,
    k: Option<usize>,
    tol: Option<f64>,
    block: usize,
) -> Result<Report, CliError> {
    let a = load_input(input)?.into_diag();
    let f = parse_function(&fun.function)?;
    let nd = a.nd(0.0);
    let k = pick_k(&a, &f, k, tol, nd.n().div_ceil(block.max(1)))?;
    let partition = default_partition(&nd, k, block).map_err(CliError::numerical)?;
    let t0 = Instant::now();
    let (out, rep) = funm_approx(&a, &f, k, &partition).map_err(CliError::numerical)?;
    let mut report = Report::new(&[
        "n", "k", "tiles", "max_submatrix", "stored_entries", "bound_estimate", "wall_ms",
    ]);
    report.push(vec![
        Field::Int(a.n() as i64),
        Field::Int(k as i64),
        Field::Int(rep.tiles as i64),
        Field::Int(rep.max_submatrix() as i64),
        Field::Int(out.stored_len() as i64),
        bound_field(&rep),
        millis(t0),
    ]);
    report.summarize("function", Field::Text(f.name()));
    report.summarize("hermitian", Field::Int(rep.hermitian as i64));
    Ok(report)
}

fn banded_cmd(
    input: &InputArgs,
    fun: &FunArgs,
    k: Option<usize>,
    tol: Option<f64>,
    m: Option<usize>,
) -> Result<Report, CliError> {
    let a = load_input(input)?.into_diag();
    let f = parse_function(&fun.function)?;
    let nd = a.nd(0.0);
    let m = m.unwrap_or_else(|| nd.iter().map(|r| r.unsigned_abs() as usize).max().unwrap_or(0));
    let k = pick_k(&a, &f, k, tol, 4 * a.n().div_ceil(2 * k.unwrap_or(8) * m.max(1) + 1))?;
    let t0 = Instant::now();
    let (out, rep) = banded_funm(&a, &f, m, k).map_err(CliError::numerical)?;
    let mut report = Report::new(&[
        "n", "m", "k", "blocks", "max_block", "stored_entries", "bound_estimate", "wall_ms",
    ]);
    report.push(vec![
        Field::Int(a.n() as i64),
        Field::Int(m as i64),
        Field::Int(k as i64),
        Field::Int(rep.tiles as i64),
        Field::Int(rep.max_submatrix() as i64),
        Field::Int(out.stored_len() as i64),
        bound_field(&rep),
        millis(t0),
    ]);
    Ok(report)
}

fn toeplitz_cmd(
    input: &InputArgs,
    fun: &FunArgs,
    k: Option<usize>,
    tol: Option<f64>,
    cap: Option<usize>,
) -> Result<Report, CliError> {
    let t = load_input(input)?.into_toeplitz()?;
    let f = parse_function(&fun.function)?;
    let k = match k {
        Some(k) => k,
        None => pick_k(&t.to_diag_matrix(0.0), &f, None, tol, 2)?,
    };
    let t0 = Instant::now();
    let (out, rep) = toeplitz_funm(&t, &f, k, cap).map_err(CliError::numerical)?;
    let mut report = Report::new(&[
        "n", "k", "delta_border", "delta_anchor", "delta_max", "stored_entries",
        "bound_estimate", "wall_ms",
    ]);
    let border = rep.submatrix_sizes.first().copied().unwrap_or(0);
    let anchor = rep.submatrix_sizes.get(1).copied().unwrap_or(0);
    report.push(vec![
        Field::Int(t.n() as i64),
        Field::Int(k as i64),
        Field::Int(border as i64),
        Field::Int(anchor as i64),
        Field::Int(border.max(anchor) as i64),
        Field::Int(out.stored_len() as i64),
        bound_field(&rep),
        millis(t0),
    ]);
    Ok(report)
}

fn element_cmd(
    input: &InputArgs,
    fun: &FunArgs,
    k: usize,
    i: usize,
    j: usize,
) -> Result<Report, CliError> {
    let a = load_input(input)?.into_diag();
    let f = parse_function(&fun.function)?;
    let t0 = Instant::now();
    let (value, rep) = element_approx(&a, &f, i, j, k).map_err(CliError::numerical)?;
    let mut report =
        Report::new(&["n", "k", "i", "j", "value", "submatrix", "bound_estimate", "wall_ms"]);
    report.push(vec![
        Field::Int(a.n() as i64),
        Field::Int(k as i64),
        Field::Int(i as i64),
        Field::Int(j as i64),
        Field::Float(value),
        Field::Int(rep.max_submatrix() as i64),
        bound_field(&rep),
        millis(t0),
    ]);
    Ok(report)
}

fn trace_cmd(input: &InputArgs, fun: &FunArgs, k: usize) -> Result<Report, CliError> {
    let a = load_input(input)?.into_diag();
    let f = parse_function(&fun.function)?;
    let nd = a.nd(0.0);
    let anchor = delta_set(&nd, 1, 1, k).map_err(CliError::numerical)?;
    let delta11: usize =
        anchor.unclipped_intervals().iter().map(|&(l, h)| (h - l + 1) as usize).sum();
    let t0 = Instant::now();
    let (value, rep) = trace_approx(&a, &f, k).map_err(CliError::numerical)?;
    let mut report = Report::new(&[
        "n", "k", "trace", "delta11", "max_submatrix", "bound_estimate", "wall_ms",
    ]);
    report.push(vec![
        Field::Int(a.n() as i64),
        Field::Int(k as i64),
        Field::Float(value),
        Field::Int(delta11 as i64),
        Field::Int(rep.max_submatrix() as i64),
        bound_field(&rep),
        millis(t0),
    ]);
    Ok(report)
}

fn diag_cmd(input: &InputArgs, fun: &FunArgs, k: usize, batch: usize) -> Result<Report, CliError> {
    let a = load_input(input)?.into_diag();
    let f = parse_function(&fun.function)?;
    let t0 = Instant::now();
    let (values, rep) = diag_approx(&a, &f, k, batch).map_err(CliError::numerical)?;
    let mut report = Report::new(&["i", "value"]);
    for (idx, v) in values.iter().enumerate() {
        report.push(vec![Field::Int(idx as i64 + 1), Field::Float(*v)]);
    }
    report.summarize("n", Field::Int(a.n() as i64));
    report.summarize("k", Field::Int(k as i64));
    report.summarize("batch", Field::Int(batch as i64));
    report.summarize("runs", Field::Int(rep.tiles as i64));
    report.summarize("max_submatrix", Field::Int(rep.max_submatrix() as i64));
    report.summarize("bound_estimate", bound_field(&rep));
    report.summarize("wall_ms", millis(t0));
    Ok(report)
}

fn closedform_cmd(
    symbol: &str,
    fun: &FunArgs,
    n_max: usize,
    m_flag: Option<usize>,
    eps: f64,
    step: usize,
) -> Result<Report, CliError> {
    let sym = LaurentSymbol::parse(symbol).map_err(CliError::input)?;
    let f = parse_function(&fun.function)?;
    let analysis = analyze(&sym, &f, 256).map_err(CliError::numerical)?;
    let m_base = match m_flag {
        Some(m) => m,
        None => choose_m(&analysis, &f, eps).map_err(CliError::numerical)?,
    };
    let mut report = Report::new(&["n", "m", "error_2norm", "wall_ms"]);
    report.summarize("symbol", Field::Text(symbol.into()));
    report.summarize("function", Field::Text(f.name()));
    report.summarize("delta_0", Field::Float(analysis.delta_0));
    report.summarize("m_base", Field::Int(m_base as i64));
    let r = sym.half_bandwidth();
    let mut n = 5usize.max(2 * r + 1);
    while n <= n_max {
        let m = m_base.min(n / 2).max(1);
        let t0 = Instant::now();
        let approx = if r == 1 {
            assemble_tridiag(sym.coeffs()[1], sym.coeffs()[0], &f, n, 1e-11)
                .map_err(CliError::numerical)?
        } else {
            assemble_banded(&analysis, &f, n, m, 1e-11).map_err(CliError::numerical)?
        };
        let dense =
            funm_hermitian(&sym.toeplitz(n).to_dense(), &f).map_err(CliError::numerical)?;
        let err = approx.sub(&dense).norm_2();
        report.push(vec![
            Field::Int(n as i64),
            Field::Int(m as i64),
            Field::Float(err),
            millis(t0),
        ]);
        n += step.max(1);
    }
    Ok(report)
}

fn decay_cmd(
    input: &InputArgs,
    fun: &FunArgs,
    norm: Option<f64>,
    tau: f64,
    k_text: &str,
) -> Result<Report, CliError> {
    let (_, k_hi) = parse_k_range(k_text)?;
    let raw = load_input(input)?.into_diag();
    let f = parse_function(&fun.function)?;
    let dense_raw = raw.to_dense();
    let norm2_raw = dense_raw.norm_2();
    let (a, norm2) = match norm {
        Some(target) => {
            if norm2_raw == 0.0 {
                return Err(CliError::input_msg("cannot rescale the zero matrix"));
            }
            (raw.scale(target / norm2_raw), target)
        }
        None => (raw, norm2_raw),
    };
    let nd = a.nd(0.0);
    let n = a.n();
    let t0 = Instant::now();
    let dense = a.to_dense();
    let fa = if matrix_is_hermitian(&a) {
        funm_hermitian(&dense, &f).map_err(CliError::numerical)?
    } else {
        match f {
            ScalarFunction::Exp => expm(&dense).map_err(CliError::numerical)?,
            ScalarFunction::Polynomial(ref c) => {
                funmat::densefun::polyvalm(c, &dense).map_err(CliError::numerical)?
            }
            _ => return Err(CliError::numerical_msg("no dense kernel for this input class")),
        }
    };
    // largest degree whose pattern still misses each diagonal
    let patterns: Vec<_> = (0..=k_hi).map(|k| u_set(&nd, k)).collect();
    let mut report = Report::new(&["diagonal", "measured_max", "k_used", "bound"]);
    report.summarize("n", Field::Int(n as i64));
    report.summarize("norm2", Field::Float(norm2));
    report.summarize("tau", Field::Float(tau));
    for r in -(n as i64 - 1)..=(n as i64 - 1) {
        let mut measured = 0.0f64;
        for i in 0..n {
            let j = i as i64 + r;
            if j >= 0 && (j as usize) < n {
                measured = measured.max(fa[(i, j as usize)].abs());
            }
        }
        // bound applies with degree k while r is outside the degree-(k-1)
        // pattern; use the largest valid k
        let k_used = match patterns.iter().position(|u| u.contains(r)) {
            Some(0) => continue, // r = 0 is always in the pattern
            Some(k_first) => k_first,
            None => k_hi,
        };
        let bound = decay_bound(norm2, tau, k_used, &f).map_err(CliError::numerical)?;
        report.push(vec![
            Field::Int(r),
            Field::Float(measured),
            Field::Int(k_used as i64),
            Field::Float(bound),
        ]);
    }
    report.summarize("wall_ms", millis(t0));
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn oracle_cmd(
    input: &InputArgs,
    fun: &FunArgs,
    engine: &str,
    k: usize,
    batch: usize,
    block: usize,
    i: Option<usize>,
    j: Option<usize>,
    m: Option<usize>,
) -> Result<Report, CliError> {
    let f = parse_function(&fun.function)?;
    let loaded = load_input(input)?;
    let mut report = Report::new(&[
        "engine", "n", "k", "value", "reference", "abs_error", "rel_error", "bound_estimate",
        "engine_ms", "oracle_ms",
    ]);

    let (a, toep) = match loaded {
        Input::Toeplitz(t) => (t.to_diag_matrix(0.0), Some(t)),
        Input::Diag(a) => (a, None),
    };
    let n = a.n();
    let hermitian = matrix_is_hermitian(&a);

    let dense_reference = |t0: &mut f64| -> Result<DenseMatrix<f64>, CliError> {
        let start = Instant::now();
        let out = dense_kernel(&a.to_dense(), &f, hermitian).map_err(CliError::numerical)?;
        *t0 = start.elapsed().as_secs_f64() * 1e3;
        Ok(out)
    };

    let mut oracle_ms = 0.0f64;
    let (value, reference, rep, engine_ms): (f64, f64, ApproxReport, f64) = match engine {
        "element" => {
            let (i, j) = match (i, j) {
                (Some(i), Some(j)) => (i, j),
                _ => return Err(CliError::usage("element oracle needs --i and --j")),
            };
            let start = Instant::now();
            let (v, rep) = element_approx(&a, &f, i, j, k).map_err(CliError::numerical)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let dense = dense_reference(&mut oracle_ms)?;
            (v, dense[(i - 1, j - 1)], rep, ms)
        }
        "trace" => {
            let start = Instant::now();
            let (v, rep) = trace_approx(&a, &f, k).map_err(CliError::numerical)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let t1 = Instant::now();
            let reference = if hermitian {
                trace_funm_hermitian(&a.to_dense(), &f).map_err(CliError::numerical)?
            } else {
                let dense = dense_kernel(&a.to_dense(), &f, hermitian)
                    .map_err(CliError::numerical)?;
                (0..n).map(|t| dense[(t, t)]).sum()
            };
            oracle_ms = t1.elapsed().as_secs_f64() * 1e3;
            (v, reference, rep, ms)
        }
        "diag" => {
            let start = Instant::now();
            let (vals, rep) = diag_approx(&a, &f, k, batch).map_err(CliError::numerical)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let dense = dense_reference(&mut oracle_ms)?;
            let err = vals
                .iter()
                .enumerate()
                .map(|(t, v)| (v - dense[(t, t)]).abs())
                .fold(0.0, f64::max);
            // report the max-abs diagonal error through the value columns
            (err, 0.0, rep, ms)
        }
        "funm" => {
            let nd = a.nd(0.0);
            let partition = default_partition(&nd, k, block).map_err(CliError::numerical)?;
            let start = Instant::now();
            let (out, rep) = funm_approx(&a, &f, k, &partition).map_err(CliError::numerical)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let dense = dense_reference(&mut oracle_ms)?;
            (out.to_dense().sub(&dense).norm_2(), 0.0, rep, ms)
        }
        "banded" => {
            let nd = a.nd(0.0);
            let m = m.unwrap_or_else(|| {
                nd.iter().map(|r| r.unsigned_abs() as usize).max().unwrap_or(0)
            });
            let start = Instant::now();
            let (out, rep) = banded_funm(&a, &f, m, k).map_err(CliError::numerical)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let dense = dense_reference(&mut oracle_ms)?;
            (out.to_dense().sub(&dense).norm_2(), 0.0, rep, ms)
        }
        "toeplitz" => {
            let t = toep.ok_or_else(|| {
                CliError::usage("toeplitz oracle needs a Toeplitz generator input")
            })?;
            let start = Instant::now();
            let (out, rep) = toeplitz_funm(&t, &f, k, None).map_err(CliError::numerical)?;
            let ms = start.elapsed().as_secs_f64() * 1e3;
            let dense = dense_reference(&mut oracle_ms)?;
            let mut max_err = 0.0f64;
            for p in 1..=n {
                for q in 1..=n {
                    let got = out.get(p, q);
                    max_err = max_err.max((got - dense[(p - 1, q - 1)]).abs());
                }
            }
            (max_err, 0.0, rep, ms)
        }
        other => return Err(CliError::usage(&format!("unknown engine `{other}`"))),
    };

    let abs_error = (value - reference).abs();
    let rel_error = if reference != 0.0 { abs_error / reference.abs() } else { abs_error };
    report.push(vec![
        Field::Text(engine.into()),
        Field::Int(n as i64),
        Field::Int(k as i64),
        Field::Float(value),
        Field::Float(reference),
        Field::Float(abs_error),
        Field::Float(rel_error),
        bound_field(&rep),
        Field::Float(engine_ms),
        Field::Float(oracle_ms),
    ]);
    Ok(report)
}
