//! Acceptance suite: every release-gating check at its stated tolerance,
//! one test (and one printed pass line) per criterion. Run with
//! `cargo test -p funmat --test acceptance -- --nocapture` to see the lines.

use funmat::approx::{
    decay_bound, diag_approx, element_approx, funm_approx, trace_approx,
};
use funmat::banded::banded_funm;
use funmat::closedform::{
    analyze, assemble_banded, assemble_tridiag, exp_tridiag_element, LaurentSymbol,
};
use funmat::densefun::{
    expm, funm_hermitian, polyvalm, sym_eigenvalues, ScalarFunction,
};
use funmat::diagsets::{
    default_partition, delta_set, s_sets, u_set, DiagSet, PairBlock, Partition,
};
use funmat::matstore::{kron_sum_laplacian, DenseMatrix, DiagMatrix, ToeplitzMatrix};
use funmat::rng::SplitMix64;
use funmat::toepdisp::{power_generators, reconstruct, toeplitz_funm, toeplitz_matvec};

fn random_sparse(n: usize, diags: usize, rng: &mut SplitMix64, positive: bool) -> DiagMatrix<f64> {
    let mut m = DiagMatrix::zeros(n);
    for _ in 0..diags {
        let r = rng.below(2 * n - 1) as i64 - (n as i64 - 1);
        let len = DiagMatrix::<f64>::diag_len(n, r);
        let vals: Vec<f64> = (0..len)
            .map(|_| if positive { rng.uniform(0.5, 1.5) } else { rng.uniform(-1.0, 1.0) })
            .collect();
        m.set_diag(r, vals).unwrap();
    }
    m
}

fn random_banded(n: usize, m: usize, rng: &mut SplitMix64) -> DiagMatrix<f64> {
    let mut a = DiagMatrix::zeros(n);
    for r in -(m as i64)..=(m as i64) {
        let len = DiagMatrix::<f64>::diag_len(n, r);
        let vals: Vec<f64> = (0..len).map(|_| rng.uniform(-1.0, 1.0)).collect();
        a.set_diag(r, vals).unwrap();
    }
    a
}

fn random_sparse_toeplitz(n: usize, rng: &mut SplitMix64) -> ToeplitzMatrix<f64> {
    let mut col = vec![0.0; n];
    let mut row = vec![0.0; n];
    col[0] = rng.uniform(-1.0, 1.0);
    row[0] = col[0];
    for _ in 0..3 {
        col[1 + rng.below(n - 1)] = rng.uniform(-1.0, 1.0);
        row[1 + rng.below(n - 1)] = rng.uniform(-1.0, 1.0);
    }
    ToeplitzMatrix::new(col, row).unwrap()
}

fn tridiag_toeplitz(n: usize, diag: f64, off: f64) -> ToeplitzMatrix<f64> {
    let mut col = vec![0.0; n];
    col[0] = diag;
    col[1] = off;
    ToeplitzMatrix::symmetric(col).unwrap()
}

/// Criterion 1: every engine reproduces dense polynomial evaluation to
/// 1e-10 for random sparse patterns, k in {2, 4, 8}, 50 matrices.
#[test]
fn acceptance_1_polynomial_exactness_all_engines() {
    let mut rng = SplitMix64::new(0xACC1);
    const TOL: f64 = 1e-10;
    for trial in 0u64..50 {
        let n = 8 + rng.below(57);
        let k = [2usize, 4, 8][trial as usize % 3];
        let coeffs: Vec<f64> = (0..=k).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let f = ScalarFunction::Polynomial(coeffs.clone());

        // general sparse input for the index-set engines
        let a = random_sparse(n, 1 + rng.below(4), &mut rng, false);
        let nd = a.nd(0.0);
        let dense = polyvalm(&coeffs, &a.to_dense()).unwrap();

        let i = 1 + rng.below(n);
        let j = 1 + rng.below(n);
        let (el, _) = element_approx(&a, &f, i, j, k).unwrap();
        assert!((el - dense[(i - 1, j - 1)]).abs() < TOL, "element trial {trial}");

        let (tr, _) = trace_approx(&a, &f, k).unwrap();
        let tr_dense: f64 = (0..n).map(|t| dense[(t, t)]).sum();
        assert!((tr - tr_dense).abs() < TOL * tr_dense.abs().max(1.0), "trace trial {trial}");

        let (dg, _) = diag_approx(&a, &f, k, 1 + rng.below(n)).unwrap();
        for t in 0..n {
            assert!((dg[t] - dense[(t, t)]).abs() < TOL, "diag trial {trial}");
        }

        let partition = default_partition(&nd, k, 1 + rng.below(32)).unwrap();
        let (fm, _) = funm_approx(&a, &f, k, &partition).unwrap();
        let u = u_set(&nd, k);
        for p in 1..=n {
            for q in 1..=n {
                let want = if u.contains(q as i64 - p as i64) { dense[(p - 1, q - 1)] } else { 0.0 };
                assert!((fm.get(p, q) - want).abs() < TOL, "funm trial {trial}");
            }
        }

        // banded engine on a banded input
        let m = 1 + rng.below(3);
        let ab = random_banded(n, m, &mut rng);
        let dense_b = polyvalm(&coeffs, &ab.to_dense()).unwrap();
        let (fb, _) = banded_funm(&ab, &f, m, k).unwrap();
        let km = (k * m).min(n - 1) as i64;
        for p in 1..=n {
            for q in 1..=n {
                let want =
                    if (q as i64 - p as i64).abs() <= km { dense_b[(p - 1, q - 1)] } else { 0.0 };
                assert!((fb.get(p, q) - want).abs() < TOL, "banded trial {trial}");
            }
        }

        // Toeplitz engine on a sparse Toeplitz input
        let t = random_sparse_toeplitz(n.max(12), &mut rng);
        let dense_t = polyvalm(&coeffs, &t.to_dense()).unwrap();
        let (ft, _) = toeplitz_funm(&t, &f, k, None).unwrap();
        let ut = u_set(&t.nd(0.0), k);
        for p in 1..=t.n() {
            for q in 1..=t.n() {
                let want =
                    if ut.contains(q as i64 - p as i64) { dense_t[(p - 1, q - 1)] } else { 0.0 };
                assert!((ft.get(p, q) - want).abs() < TOL, "toeplitz trial {trial}");
            }
        }
    }
    println!("ACCEPTANCE 1 (polynomial exactness, all engines, 50 matrices): PASS");
}

/// Criterion 2: structural soundness of the power patterns, plus the worked
/// 6x6 example reproduced exactly.
#[test]
fn acceptance_2_diagonal_set_soundness() {
    let mut rng = SplitMix64::new(0xACC2);
    for trial in 0..100 {
        let n = 6 + rng.below(43);
        // positive entries: products cannot cancel
        let a = random_sparse(n, 1 + rng.below(4), &mut rng, true);
        let nd = a.nd(0.0);
        let s = s_sets(&nd, 5);
        let dense = a.to_dense();
        let mut power = DenseMatrix::<f64>::identity(n);
        for p in 1..=5 {
            power = power.matmul(&dense);
            let mut pm = DiagMatrix::<f64>::zeros(n);
            for i in 1..=n {
                for j in 1..=n {
                    if power[(i - 1, j - 1)] != 0.0 {
                        pm.set(i, j, power[(i - 1, j - 1)]);
                    }
                }
            }
            assert!(pm.nd(0.0).is_subset_of(&s[p]), "trial {trial} power {p}");
        }
    }
    // worked example: ND = {-5..-3} ∪ {0,1} ∪ {5} in dimension 6
    let nd = DiagSet::from_intervals(6, [(-5, -3), (0, 1), (5, 5)]);
    let s = s_sets(&nd, 3);
    assert_eq!(s[2].intervals(), &[(-5, -2), (0, 2), (5, 5)]);
    assert_eq!(s[3].intervals(), &[(-5, 3), (5, 5)]);
    println!("ACCEPTANCE 2 (power-pattern soundness, 100 matrices + worked example): PASS");
}

/// Criterion 3: the per-diagonal decay bound dominates the measured maxima
/// of exp(-T) for the 205x205 sparse Toeplitz family at norm 0.5, tau 3.
#[test]
fn acceptance_3_decay_bound_domination() {
    let n = 205;
    let mut col = vec![0.0f64; n];
    let mut row = vec![0.0f64; n];
    for r in [0i64, 1, 102, 103, 204] {
        row[r as usize] = 0.1;
        col[r as usize] = 0.1;
    }
    let t = ToeplitzMatrix::new(col, row).unwrap();
    let dense = t.to_dense();
    let norm2 = dense.norm_2();
    let scaled = dense.scale(0.5 / norm2);
    // measured: exp(-T) through the dense kernel
    let f_neg = expm(&scaled.scale(-1.0)).unwrap();
    let mut diag_max = std::collections::BTreeMap::new();
    for i in 0..n {
        for j in 0..n {
            let r = j as i64 - i as i64;
            let e = diag_max.entry(r).or_insert(0.0f64);
            *e = e.max(f_neg[(i, j)].abs());
        }
    }
    let nd = t.nd(0.0);
    let f = ScalarFunction::Exp;
    for k in 1..=30usize {
        let pattern = u_set(&nd, k - 1);
        let bound = decay_bound(0.5, 3.0, k, &f).unwrap();
        for (&r, &measured) in &diag_max {
            if !pattern.contains(r) {
                assert!(
                    measured <= bound,
                    "k={k} diagonal {r}: measured {measured:.3e} > bound {bound:.3e}"
                );
            }
        }
    }
    println!("ACCEPTANCE 3 (decay bound dominates measured diagonals, k <= 30): PASS");
}

/// Criterion 4: the large sparse example: submatrix size exactly 269 and
/// agreement with the dense oracle on the ~800-index reach window.
#[test]
fn acceptance_4_element_at_scale() {
    let n = 3000;
    let mut rng = SplitMix64::new(2024);
    let mut a = DiagMatrix::zeros(n);
    let mut ranges: Vec<i64> = Vec::new();
    ranges.extend(-154..=-146);
    ranges.extend(-3..=3);
    ranges.extend(148..=152);
    ranges.extend(388..=392);
    for r in ranges {
        let len = DiagMatrix::<f64>::diag_len(n, r);
        let vals: Vec<f64> = (0..len).map(|_| 0.3 * rng.uniform(-1.0, 1.0)).collect();
        a.set_diag(r, vals).unwrap();
    }
    let f = ScalarFunction::Exp;
    let (value, rep) = element_approx(&a, &f, 1500, 1500, 9).unwrap();
    assert_eq!(rep.max_submatrix(), 269, "structural submatrix size");

    // oracle: dense exponential on the degree-11 reach (815 indices), a
    // strict superset of the degree-9 set
    let window = delta_set(&a.nd(0.0), 1500, 1500, 11).unwrap().clipped();
    assert_eq!(window.cardinality(), 815);
    let fw = expm(&a.extract(&window, &window).unwrap()).unwrap();
    let pos = window.pos(1500).unwrap();
    let diff = (value - fw[(pos, pos)]).abs();
    assert!(diff <= 1e-8, "|approx - window oracle| = {diff:.3e}");
    println!(
        "ACCEPTANCE 4 (element at n=3000: size 269, window agreement {diff:.2e} <= 1e-8): PASS"
    );
}

/// Criterion 5: trace of four functions of the 900x900 grid operator at
/// k = 14, relative error <= 1e-6 against the eigenvalue-sum oracle, and the
/// anchor-set cardinality formula.
#[test]
fn acceptance_5_trace_grid_operator() {
    let a = kron_sum_laplacian(30);
    assert_eq!(a.n(), 900);
    let k = 14;
    // anchor cardinality: k²/2 + k + 1 at even k
    let anchor = delta_set(&a.nd(0.0), 1, 1, k).unwrap();
    let delta11: usize =
        anchor.unclipped_intervals().iter().map(|&(l, h)| (h - l + 1) as usize).sum();
    assert_eq!(delta11, k * k / 2 + k + 1);
    assert_eq!(delta11, 113);

    let eigenvalues = sym_eigenvalues(&a.to_dense()).unwrap();
    for f in [
        ScalarFunction::Log,
        ScalarFunction::Sqrt,
        ScalarFunction::Inv,
        ScalarFunction::InvSqrt,
    ] {
        let reference: f64 = eigenvalues.iter().map(|&lam| f.eval(lam).unwrap()).sum();
        let (tr, _) = trace_approx(&a, &f, k).unwrap();
        let rel = (tr - reference).abs() / reference.abs();
        assert!(rel <= 1e-6, "{}: relative error {rel:.3e}", f.name());
    }
    println!("ACCEPTANCE 5 (trace of B_30, four functions, rel err <= 1e-6, #delta11 = 113): PASS");
}

/// Criterion 6: generator soundness at n = 256 (width exactly 2s, relative
/// reconstruction error <= 1e-8) and the Toeplitz engine on the tridiagonal
/// family at n = 1100 (max-abs error <= 1e-8 vs dense expm, reach size 48).
#[test]
fn acceptance_6_toeplitz_displacement() {
    let n = 256;
    let mut rng = SplitMix64::new(0xACC6);
    let col: Vec<f64> = (0..n).map(|_| rng.uniform(-1.0, 1.0)).collect();
    let mut row: Vec<f64> = (0..n).map(|_| rng.uniform(-1.0, 1.0)).collect();
    row[0] = col[0];
    let t = ToeplitzMatrix::new(col, row).unwrap();
    let t = t.scale(1.0 / t.to_dense().norm_2());
    let gens = power_generators(&t, 4);
    let dense = t.to_dense();
    let mut power = dense.clone();
    for (idx, pair) in gens.iter().enumerate() {
        let s = idx + 1;
        assert_eq!(pair.width(), 2 * s, "generator width at power {s}");
        let rel = reconstruct(pair).sub(&power).norm_fro() / power.norm_fro();
        assert!(rel <= 1e-8, "power {s}: relative error {rel:.3e}");
        power = power.matmul(&dense);
    }

    let big = tridiag_toeplitz(1100, -2.0, 1.0);
    let f = ScalarFunction::Exp;
    let (out, rep) = toeplitz_funm(&big, &f, 12, None).unwrap();
    assert_eq!(rep.max_submatrix(), 48, "reported reach size");
    let dense_exp = expm(&big.to_dense()).unwrap();
    let mut max_err = 0.0f64;
    for i in 1..=1100usize {
        for j in 1..=1100usize {
            let err = (out.get(i, j) - dense_exp[(i - 1, j - 1)]).abs();
            if err > max_err {
                max_err = err;
            }
        }
    }
    assert!(max_err <= 1e-8, "max-abs error {max_err:.3e}");
    println!(
        "ACCEPTANCE 6 (displacement widths 2s; tridiagonal n=1100 err {max_err:.2e} <= 1e-8, reach 48): PASS"
    );
}

/// Criterion 7: the overlapping-window banded engine on the discrete
/// Laplacian at n = 1000, k = 12: error <= 1e-8 and within the reported
/// bound.
#[test]
fn acceptance_7_banded_laplacian() {
    let n = 1000;
    let mut a = DiagMatrix::<f64>::zeros(n);
    a.set_diag(0, vec![2.0; n]).unwrap();
    a.set_diag(1, vec![-1.0; n - 1]).unwrap();
    a.set_diag(-1, vec![-1.0; n - 1]).unwrap();
    let f = ScalarFunction::Exp;
    let (out, rep) = banded_funm(&a, &f, 1, 12).unwrap();
    let dense = expm(&a.to_dense()).unwrap();
    let err = out.to_dense().sub(&dense).norm_2();
    assert!(err <= 1e-8, "2-norm error {err:.3e}");
    let bound = rep.bound_estimate.unwrap();
    assert!(err <= bound, "error {err:.3e} above reported bound {bound:.3e}");
    println!("ACCEPTANCE 7 (banded n=1000 exp: err {err:.2e} <= 1e-8 and <= bound {bound:.2e}): PASS");
}

/// Criterion 8: closed-form element formulas: Bessel identity, tridiagonal
/// inverse square root, pentadiagonal exponential, and the closed-form root.
#[test]
fn acceptance_8_closed_forms() {
    // (a) Bessel identity vs dense exponential, n = 400 interior
    let n = 400;
    let alpha = 1.0;
    let t = tridiag_toeplitz(n, 2.0, -1.0);
    let dense = expm(&t.to_dense().scale(-alpha)).unwrap();
    let mut worst_a = 0.0f64;
    for (p, l) in [(200usize, 200usize), (195, 204), (180, 181), (190, 210)] {
        let closed = exp_tridiag_element(alpha, p, l);
        worst_a = worst_a.max((closed - dense[(p - 1, l - 1)]).abs());
    }
    assert!(worst_a <= 1e-8, "(a) Bessel identity err {worst_a:.3e}");

    // (b) inverse square root of the (4; -1) symbol at n = 100, 2-norm
    let nb = 100;
    let f_isqrt = ScalarFunction::InvSqrt;
    let tb = tridiag_toeplitz(nb, 4.0, -1.0);
    let dense_b = funm_hermitian(&tb.to_dense(), &f_isqrt).unwrap();
    let assembled = assemble_tridiag(-1.0, 4.0, &f_isqrt, nb, 1e-11).unwrap();
    let err_b = assembled.sub(&dense_b).norm_2();
    assert!(err_b <= 1e-6, "(b) tridiagonal inv-sqrt err {err_b:.3e}");

    // (c) pentadiagonal symbol, f = exp, m = 40, n = 100, 2-norm
    let sym = LaurentSymbol::new(vec![2.0, -1.0, 0.2]).unwrap();
    let f_exp = ScalarFunction::Exp;
    let analysis = analyze(&sym, &f_exp, 256).unwrap();
    let approx = assemble_banded(&analysis, &f_exp, 100, 40, 1e-11).unwrap();
    let dense_c = funm_hermitian(&sym.toeplitz(100).to_dense(), &f_exp).unwrap();
    let err_c = approx.sub(&dense_c).norm_2();
    assert!(err_c <= 1e-6, "(c) pentadiagonal exp err {err_c:.3e}");

    // (d) companion-solver root vs the closed form, 100 samples
    let u_closed = |lam: f64| {
        5.0 / 4.0
            + (-7.0 + 20.0 * lam).sqrt() / 4.0
            + (2.0 + 10.0 * (-7.0 + 20.0 * lam).sqrt() + 20.0 * lam).sqrt() / 4.0
    };
    let (lo, hi) = analysis.lambda_range;
    for s in 0..100 {
        let x = (s as f64 + 0.5) * std::f64::consts::PI / 100.0;
        let lam = sym.g(x);
        assert!(lam >= lo - 1e-12 && lam <= hi + 1e-12);
        let roots = sym.outer_roots(lam).unwrap();
        assert_eq!(roots.len(), 1);
        let u = roots[0];
        assert!((u.im).abs() < 1e-10);
        assert!((u.re - u_closed(lam)).abs() <= 1e-10 * u_closed(lam).max(1.0));
        // polynomial residual of the solved root
        let resid =
            (0.2 * u.re * u.re - u.re + 2.0 - 1.0 / u.re + 0.2 / (u.re * u.re) - lam).abs();
        assert!(resid <= 1e-10, "residual {resid:.3e}");
    }
    println!(
        "ACCEPTANCE 8 (closed forms: Bessel {worst_a:.2e}, tridiag {err_b:.2e}, pentadiag {err_c:.2e}, roots): PASS"
    );
}

/// Criterion 9: property suite: per-symmetry, the translation law,
/// partition validation, FFT products, and output sparsity.
#[test]
fn acceptance_9_property_suite() {
    let mut rng = SplitMix64::new(0xACC9);

    // per-symmetry of the closed-form dispatch
    let sym = LaurentSymbol::new(vec![2.0, -1.0, 0.2]).unwrap();
    let f = ScalarFunction::Exp;
    let analysis = analyze(&sym, &f, 128).unwrap();
    for _ in 0..12 {
        let n = 30 + rng.below(40);
        let m = 5 + rng.below(8);
        let s = 1 + rng.below(n);
        let t = 1 + rng.below(n);
        let a = funmat::closedform::element_r2(&analysis, &f, n, s, t, m).unwrap();
        let b = funmat::closedform::element_r2(&analysis, &f, n, n + 1 - s, n + 1 - t, m).unwrap();
        assert_eq!(a, b, "per-symmetry at ({s},{t}), n={n}");
    }

    // translation law of the index sets
    for _ in 0..20 {
        let n = 20 + rng.below(60);
        let vals: Vec<i64> =
            (0..4).map(|_| rng.below(2 * n - 1) as i64 - (n as i64 - 1)).collect();
        let nd = DiagSet::from_indices(n, vals);
        let i = 1 + rng.below(n / 2);
        let j = 1 + rng.below(n / 2);
        let k = rng.below(5);
        let base = delta_set(&nd, i, j, k).unwrap();
        let z = rng.below(n / 2) as i64;
        let direct = delta_set(&nd, i + z as usize, j + z as usize, k).unwrap();
        assert_eq!(direct.clipped(), base.shift(z).clipped());
    }

    // partition validation: accepts the default tiling, rejects overlap and
    // undercoverage
    let nd = DiagSet::from_intervals(40, [(-3, -2), (0, 1), (7, 7)]);
    assert!(default_partition(&nd, 3, 8).is_ok());
    let full = PairBlock { row_lo: 1, row_hi: 40, d_lo: -12, d_hi: 12 };
    let dup = Partition::new(&nd, 3, vec![full, full]);
    assert!(dup.is_err());
    let half = PairBlock { row_lo: 1, row_hi: 20, d_lo: -12, d_hi: 12 };
    assert!(Partition::new(&nd, 3, vec![half]).is_err());

    // FFT matvec against the direct product up to n = 4096
    for n in [257usize, 1000, 4096] {
        let col: Vec<f64> = (0..n).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let mut row: Vec<f64> = (0..n).map(|_| rng.uniform(-1.0, 1.0)).collect();
        row[0] = col[0];
        let t = ToeplitzMatrix::new(col, row).unwrap();
        let x: Vec<f64> = (0..n).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let fast = toeplitz_matvec(&t, &x);
        let direct = t.to_dense().matvec(&x);
        let scale = direct.iter().map(|v| v.abs()).fold(0.0f64, f64::max).max(1.0);
        let err = fast
            .iter()
            .zip(&direct)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        assert!(err <= 1e-11 * scale, "n={n}: fft vs direct {err:.3e}");
    }

    // output sparsity of the general engine stays inside the degree pattern
    for _ in 0..6 {
        let n = 24 + rng.below(40);
        let a = random_sparse(n, 1 + rng.below(3), &mut rng, false);
        let nd = a.nd(0.0);
        let k = 1 + rng.below(5);
        let p = default_partition(&nd, k, 16).unwrap();
        let (out, _) = funm_approx(&a, &ScalarFunction::Exp, k, &p).unwrap();
        assert!(out.nd(0.0).is_subset_of(&u_set(&nd, k)));
    }

    println!("ACCEPTANCE 9 (property suite: symmetry, translation, partitions, FFT, sparsity): PASS");
}
