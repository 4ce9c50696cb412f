//! Matrix exponential by scaling and squaring with a diagonal Padé(13)
//! approximant. Degree selection by 1-norm thresholds; relative accuracy near
//! unit roundoff for well-scaled inputs.

use super::lu;
use crate::error::Result;
use crate::matstore::DenseMatrix;
use crate::scalar::Scalar;

// 1-norm thresholds below which the degree-m Padé approximant is accurate to
// unit roundoff.
const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.53939833006323e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068e0;
const THETA_13: f64 = 5.371920351148152e0;

const PADE_3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const PADE_5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const PADE_7: [f64; 8] = [17_297_280.0, 8_648_640.0, 1_995_840.0, 277_200.0, 25_200.0, 1512.0, 56.0, 1.0];
const PADE_9: [f64; 10] = [
    17_643_225_600.0,
    8_821_612_800.0,
    2_075_673_600.0,
    302_702_400.0,
    30_270_240.0,
    2_162_160.0,
    110_880.0,
    3960.0,
    90.0,
    1.0,
];
const PADE_13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// Evaluate the order-(m,m) Padé approximant given the even power stack.
/// Returns (U, V) with r(A) = (V - U)^{-1} (V + U).
fn pade_uv<S: Scalar>(
    a: &DenseMatrix<S>,
    powers: &[&DenseMatrix<S>],
    coeffs: &[f64],
) -> (DenseMatrix<S>, DenseMatrix<S>) {
    let n = a.rows();
    // U = A * (sum of odd coefficients over even powers), V = even part
    let mut u_inner = DenseMatrix::<S>::zeros(n, n);
    let mut v = DenseMatrix::<S>::zeros(n, n);
    u_inner.shift_diagonal(S::from_f64(coeffs[1]));
    v.shift_diagonal(S::from_f64(coeffs[0]));
    for (idx, p) in powers.iter().enumerate() {
        let even = 2 * (idx + 1);
        v = v.add(&p.scale(S::from_f64(coeffs[even])));
        if even + 1 < coeffs.len() {
            u_inner = u_inner.add(&p.scale(S::from_f64(coeffs[even + 1])));
        }
    }
    (a.matmul(&u_inner), v)
}

fn pade_solve<S: Scalar>(u: &DenseMatrix<S>, v: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
    let p = v.add(u);
    let q = v.sub(u);
    Ok(lu::factor(&q)?.solve(&p))
}

/// Matrix exponential.
pub fn expm<S: Scalar>(a: &DenseMatrix<S>) -> Result<DenseMatrix<S>> {
    let n = a.require_square()?;
    if n == 0 {
        return Ok(DenseMatrix::zeros(0, 0));
    }
    let norm = a.norm_1();

    let a2 = a.matmul(a);
    if norm <= THETA_3 {
        let (u, v) = pade_uv(a, &[&a2], &PADE_3);
        return pade_solve(&u, &v);
    }
    let a4 = a2.matmul(&a2);
    if norm <= THETA_5 {
        let (u, v) = pade_uv(a, &[&a2, &a4], &PADE_5);
        return pade_solve(&u, &v);
    }
    let a6 = a4.matmul(&a2);
    if norm <= THETA_7 {
        let (u, v) = pade_uv(a, &[&a2, &a4, &a6], &PADE_7);
        return pade_solve(&u, &v);
    }
    if norm <= THETA_9 {
        let a8 = a6.matmul(&a2);
        let (u, v) = pade_uv(a, &[&a2, &a4, &a6, &a8], &PADE_9);
        return pade_solve(&u, &v);
    }

    // scale so the 1-norm drops under the degree-13 threshold
    let s = ((norm / THETA_13).log2().ceil().max(0.0)) as u32;
    let scale = S::from_f64(0.5f64.powi(s as i32));
    let a_s = a.scale(scale);
    let a2s = a_s.matmul(&a_s);
    let a4s = a2s.matmul(&a2s);
    let a6s = a4s.matmul(&a2s);

    // degree 13: U = A [A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I]
    //            V = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    let b = &PADE_13;
    let w1 = a6s
        .scale(S::from_f64(b[13]))
        .add(&a4s.scale(S::from_f64(b[11])))
        .add(&a2s.scale(S::from_f64(b[9])));
    let mut w2 = a6s
        .scale(S::from_f64(b[7]))
        .add(&a4s.scale(S::from_f64(b[5])))
        .add(&a2s.scale(S::from_f64(b[3])));
    w2.shift_diagonal(S::from_f64(b[1]));
    let u = a_s.matmul(&a6s.matmul(&w1).add(&w2));

    let z1 = a6s
        .scale(S::from_f64(b[12]))
        .add(&a4s.scale(S::from_f64(b[10])))
        .add(&a2s.scale(S::from_f64(b[8])));
    let mut v = a6s.matmul(&z1).add(
        &a6s.scale(S::from_f64(b[6]))
            .add(&a4s.scale(S::from_f64(b[4])))
            .add(&a2s.scale(S::from_f64(b[2]))),
    );
    v.shift_diagonal(S::from_f64(b[0]));

    let mut r = pade_solve(&u, &v)?;
    for _ in 0..s {
        r = r.matmul(&r);
    }
    Ok(r)
}
