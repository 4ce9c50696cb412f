//! Exponentially scaled modified Bessel functions of the first kind:
//! `ive(ν, x) = e^{-x} I_ν(x)` for integer orders, by the backward (Miller)
//! recurrence with sum normalization. The scaling keeps the heat-kernel use
//! case (`x = 2t/h²`, easily in the hundreds) inside the floating-point
//! range.

/// `e^{-x} I_ν(x)` for `ν = 0..=nu_max`, `x >= 0`.
pub fn bessel_ive_upto(nu_max: usize, x: f64) -> Vec<f64> {
    assert!(x >= 0.0, "argument must be nonnegative");
    if x == 0.0 {
        let mut out = vec![0.0; nu_max + 1];
        out[0] = 1.0;
        return out;
    }
    // start far enough above both the order and the turning point
    let start = {
        let base = nu_max.max(x.ceil() as usize);
        let margin = 2 * ((base as f64).sqrt() as usize) + 40;
        base + margin
    };
    let mut out = vec![0.0; nu_max + 1];
    let mut high = 0.0f64; // I_{k+1} (unnormalized)
    let mut cur = f64::MIN_POSITIVE * 1e16; // I_k seed
    let mut norm = 0.0f64; // accumulates I_0 + 2 Σ I_k
    for k in (0..=start).rev() {
        let low = high + (2.0 * (k as f64 + 1.0) / x) * cur;
        high = cur;
        cur = low;
        // renormalize to dodge overflow
        if cur.abs() > 1e250 {
            let s = 1e-250;
            cur *= s;
            high *= s;
            norm *= s;
            for v in out.iter_mut() {
                *v *= s;
            }
        }
        if k <= nu_max {
            out[k] = cur;
        }
        if k > 0 {
            norm += 2.0 * cur;
        } else {
            norm += cur;
        }
    }
    // e^x = I_0 + 2 Σ_{k>=1} I_k, so the scaled family sums to 1
    for v in out.iter_mut() {
        *v /= norm;
    }
    out
}

/// `e^{-x} I_ν(x)` for a single (possibly negative) integer order.
pub fn bessel_ive(nu: i64, x: f64) -> f64 {
    let n = nu.unsigned_abs() as usize;
    bessel_ive_upto(n, x)[n]
}
