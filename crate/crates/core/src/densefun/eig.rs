//! Dense eigenvalue kernels.
//!
//! Real symmetric matrices go through Householder tridiagonalization followed
//! by the implicit-shift QL iteration, with or without eigenvector
//! accumulation. Real nonsymmetric matrices (only eigenvalues are ever
//! needed, for polynomial root finding via companion matrices) go through
//! balancing and the Francis double-shift QR on the Hessenberg form.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matstore::DenseMatrix;

fn hypot(a: f64, b: f64) -> f64 {
    a.hypot(b)
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Householder reduction of a real symmetric matrix to tridiagonal form.
/// On return `d` holds the diagonal, `e` the subdiagonal in `e[1..]`, and,
/// when `with_vectors` is set, `a` holds the accumulated orthogonal transform.
fn tred2(a: &mut DenseMatrix<f64>, d: &mut [f64], e: &mut [f64], with_vectors: bool) {
    let n = a.rows();
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| a[(i, k)].abs()).sum();
            if scale == 0.0 {
                e[i] = a[(i, l)];
            } else {
                for k in 0..=l {
                    a[(i, k)] /= scale;
                    h += a[(i, k)] * a[(i, k)];
                }
                let f = a[(i, l)];
                let g = -sign(h.sqrt(), f);
                e[i] = scale * g;
                h -= f * g;
                a[(i, l)] = f - g;
                let mut f_acc = 0.0;
                for j in 0..=l {
                    if with_vectors {
                        a[(j, i)] = a[(i, j)] / h;
                    }
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[(j, k)] * a[(i, k)];
                    }
                    for k in (j + 1)..=l {
                        g += a[(k, j)] * a[(i, k)];
                    }
                    e[j] = g / h;
                    f_acc += e[j] * a[(i, j)];
                }
                let hh = f_acc / (h + h);
                for j in 0..=l {
                    let f = a[(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        let delta = f * e[k] + g * a[(i, k)];
                        a[(j, k)] -= delta;
                    }
                }
            }
        } else {
            e[i] = a[(i, l)];
        }
        d[i] = h;
    }
    if with_vectors {
        d[0] = 0.0;
    }
    e[0] = 0.0;
    if with_vectors {
        for i in 0..n {
            if d[i] != 0.0 {
                // apply stored transforms
                for j in 0..i {
                    let mut g = 0.0;
                    for k in 0..i {
                        g += a[(i, k)] * a[(k, j)];
                    }
                    for k in 0..i {
                        let delta = g * a[(k, i)];
                        a[(k, j)] -= delta;
                    }
                }
            }
            d[i] = a[(i, i)];
            a[(i, i)] = 1.0;
            for j in 0..i {
                a[(j, i)] = 0.0;
                a[(i, j)] = 0.0;
            }
        }
    } else {
        for i in 0..n {
            d[i] = a[(i, i)];
        }
    }
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix.
/// `z` accumulates eigenvectors when given (columns).
fn tqli(d: &mut [f64], e: &mut [f64], mut z: Option<&mut DenseMatrix<f64>>) -> Result<()> {
    let n = d.len();
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut iter = 0;
        loop {
            // find a negligible subdiagonal element
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(Error::EigenDidNotConverge { iterations: 50 });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + sign(r, g));
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0f64;
            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(zz) = z.as_deref_mut() {
                    let nrows = zz.rows();
                    for k in 0..nrows {
                        f = zz[(k, i + 1)];
                        zz[(k, i + 1)] = s * zz[(k, i)] + c * f;
                        zz[(k, i)] = c * zz[(k, i)] - s * f;
                    }
                }
            }
            if r == 0.0 && m > l + 1 {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Full symmetric eigendecomposition: `A = V diag(d) Vᵀ` with eigenvalues
/// ascending and orthonormal columns in `V`.
pub fn sym_eigen(a: &DenseMatrix<f64>) -> Result<(Vec<f64>, DenseMatrix<f64>)> {
    let n = a.require_square()?;
    let mut work = a.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut work, &mut d, &mut e, true);
    tqli(&mut d, &mut e, Some(&mut work))?;
    // sort ascending, permuting columns
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap());
    let sorted_d: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let v = DenseMatrix::from_fn(n, n, |i, j| work[(i, order[j])]);
    Ok((sorted_d, v))
}

/// Eigenvalues of a real symmetric matrix, ascending, without vectors.
pub fn sym_eigenvalues(a: &DenseMatrix<f64>) -> Result<Vec<f64>> {
    let n = a.require_square()?;
    let mut work = a.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(&mut work, &mut d, &mut e, false);
    tqli(&mut d, &mut e, None)?;
    d.sort_by(|x, y| x.partial_cmp(y).unwrap());
    Ok(d)
}

/// Balance a real square matrix (similarity scaling by powers of 2).
fn balance(a: &mut DenseMatrix<f64>) {
    const RADIX: f64 = 2.0;
    let n = a.rows();
    let sqrdx = RADIX * RADIX;
    loop {
        let mut last = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                let mut c_mut = c;
                while c_mut < g {
                    f *= RADIX;
                    c_mut *= sqrdx;
                }
                g = r * RADIX;
                while c_mut > g {
                    f /= RADIX;
                    c_mut /= sqrdx;
                }
                if (c_mut + r) / f < 0.95 * s {
                    last = false;
                    let ginv = 1.0 / f;
                    for j in 0..n {
                        a[(i, j)] *= ginv;
                    }
                    for j in 0..n {
                        a[(j, i)] *= f;
                    }
                }
            }
        }
        if last {
            break;
        }
    }
}

/// Eigenvalues of a real upper Hessenberg matrix by the shifted QR iteration.
fn hqr(a: &mut DenseMatrix<f64>) -> Result<Vec<Complex64>> {
    let n = a.rows();
    let mut eig = vec![Complex64::new(0.0, 0.0); n];
    if n == 0 {
        return Ok(eig);
    }
    let mut anorm = 0.0f64;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[(i, j)].abs();
        }
    }
    let mut nn = n as isize - 1;
    let mut t = 0.0f64;
    while nn >= 0 {
        let mut its = 0;
        loop {
            // look for a single small subdiagonal element
            let mut l = nn;
            while l >= 1 {
                let s = a[(l as usize - 1, l as usize - 1)].abs() + a[(l as usize, l as usize)].abs();
                let s = if s == 0.0 { anorm } else { s };
                if a[(l as usize, l as usize - 1)].abs() <= f64::EPSILON * s {
                    a[(l as usize, l as usize - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            let x = a[(nn as usize, nn as usize)];
            if l == nn {
                eig[nn as usize] = Complex64::new(x + t, 0.0);
                nn -= 1;
                break;
            }
            let y = a[(nn as usize - 1, nn as usize - 1)];
            let w = a[(nn as usize, nn as usize - 1)] * a[(nn as usize - 1, nn as usize)];
            if l == nn - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                let x_t = x + t;
                if q >= 0.0 {
                    let z = p + sign(z, p);
                    eig[nn as usize - 1] = Complex64::new(x_t + z, 0.0);
                    eig[nn as usize] = if z != 0.0 {
                        Complex64::new(x_t - w / z, 0.0)
                    } else {
                        Complex64::new(x_t + z, 0.0)
                    };
                } else {
                    eig[nn as usize - 1] = Complex64::new(x_t + p, z);
                    eig[nn as usize] = Complex64::new(x_t + p, -z);
                }
                nn -= 2;
                break;
            }
            if its == 30 {
                return Err(Error::EigenDidNotConverge { iterations: 30 });
            }
            let mut x = x;
            let mut y = y;
            let mut w = w;
            if its == 10 || its == 20 {
                // exceptional shift
                t += x;
                for i in 0..=(nn as usize) {
                    a[(i, i)] -= x;
                }
                let s = a[(nn as usize, nn as usize - 1)].abs()
                    + a[(nn as usize - 1, nn as usize - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            // form shift and look for two consecutive small subdiagonals
            let mut m = nn - 2;
            let (mut p, mut q, mut r) = (0.0f64, 0.0f64, 0.0f64);
            while m >= l {
                let z = a[(m as usize, m as usize)];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[(m as usize + 1, m as usize)] + a[(m as usize, m as usize + 1)];
                q = a[(m as usize + 1, m as usize + 1)] - z - rr - ss;
                r = a[(m as usize + 2, m as usize + 1)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[(m as usize, m as usize - 1)].abs() * (q.abs() + r.abs());
                let v = p.abs()
                    * (a[(m as usize - 1, m as usize - 1)].abs()
                        + a[(m as usize, m as usize)].abs()
                        + a[(m as usize + 1, m as usize + 1)].abs());
                if u <= f64::EPSILON * v {
                    break;
                }
                m -= 1;
            }
            for i in (m + 2)..=nn {
                a[(i as usize, i as usize - 2)] = 0.0;
                if i > m + 2 {
                    a[(i as usize, i as usize - 3)] = 0.0;
                }
            }
            // double QR step on rows l..nn and columns m..nn
            for k in m..=(nn - 1) {
                if k != m {
                    p = a[(k as usize, k as usize - 1)];
                    q = a[(k as usize + 1, k as usize - 1)];
                    r = if k != nn - 1 { a[(k as usize + 2, k as usize - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        a[(k as usize, k as usize - 1)] = -a[(k as usize, k as usize - 1)];
                    }
                } else {
                    a[(k as usize, k as usize - 1)] = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;
                // row modification
                for j in (k as usize)..=(nn as usize) {
                    p = a[(k as usize, j)] + q * a[(k as usize + 1, j)];
                    if k != nn - 1 {
                        p += r * a[(k as usize + 2, j)];
                        a[(k as usize + 2, j)] -= p * z;
                    }
                    a[(k as usize + 1, j)] -= p * y;
                    a[(k as usize, j)] -= p * x;
                }
                // column modification
                let mmin = if nn < k + 3 { nn as usize } else { k as usize + 3 };
                for i in (l as usize)..=mmin {
                    p = x * a[(i, k as usize)] + y * a[(i, k as usize + 1)];
                    if k != nn - 1 {
                        p += z * a[(i, k as usize + 2)];
                        a[(i, k as usize + 2)] -= p * r;
                    }
                    a[(i, k as usize + 1)] -= p * q;
                    a[(i, k as usize)] -= p;
                }
            }
        }
    }
    Ok(eig)
}

/// Reduce a real square matrix to upper Hessenberg form (elimination with
/// pivoting).
fn to_hessenberg(a: &mut DenseMatrix<f64>) {
    let n = a.rows();
    if n < 3 {
        return;
    }
    for m in 1..(n - 1) {
        let mut x = 0.0f64;
        let mut i_piv = m;
        for j in m..n {
            if a[(j, m - 1)].abs() > x.abs() {
                x = a[(j, m - 1)];
                i_piv = j;
            }
        }
        if i_piv != m {
            for j in (m - 1)..n {
                let tmp = a[(i_piv, j)];
                a[(i_piv, j)] = a[(m, j)];
                a[(m, j)] = tmp;
            }
            for j in 0..n {
                let tmp = a[(j, i_piv)];
                a[(j, i_piv)] = a[(j, m)];
                a[(j, m)] = tmp;
            }
        }
        if x != 0.0 {
            for i in (m + 1)..n {
                let mut y = a[(i, m - 1)];
                if y != 0.0 {
                    y /= x;
                    a[(i, m - 1)] = y;
                    for j in m..n {
                        let d = y * a[(m, j)];
                        a[(i, j)] -= d;
                    }
                    for j in 0..n {
                        let d = y * a[(j, i)];
                        a[(j, m)] += d;
                    }
                }
            }
        }
    }
    // zero out the below-Hessenberg part that now holds multipliers
    for i in 2..n {
        for j in 0..(i - 1) {
            a[(i, j)] = 0.0;
        }
    }
}

/// Eigenvalues of a general real square matrix.
pub fn real_eigenvalues(a: &DenseMatrix<f64>) -> Result<Vec<Complex64>> {
    a.require_square()?;
    let mut work = a.clone();
    balance(&mut work);
    to_hessenberg(&mut work);
    hqr(&mut work)
}

/// Roots of a real-coefficient polynomial `c[0] + c[1] x + ... + c[d] x^d`
/// via the companion-matrix eigenvalues. The leading coefficient must be
/// nonzero.
pub fn poly_roots(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    if coeffs.len() < 2 {
        return Err(Error::InvalidCoefficients("need degree >= 1"));
    }
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    if lead == 0.0 {
        return Err(Error::InvalidCoefficients("leading coefficient must be nonzero"));
    }
    let mut comp = DenseMatrix::<f64>::zeros(d, d);
    for i in 1..d {
        comp[(i, i - 1)] = 1.0;
    }
    for i in 0..d {
        comp[(i, d - 1)] = -coeffs[i] / lead;
    }
    real_eigenvalues(&comp)
}
