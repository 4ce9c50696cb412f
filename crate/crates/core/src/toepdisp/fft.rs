//! Iterative radix-2 FFT with power-of-two padding, and the circulant
//! embedding that makes Toeplitz matrix-vector products run in
//! O(n log n).

use num_complex::Complex64;

use crate::matstore::ToeplitzMatrix;
use crate::scalar::Scalar;

/// In-place radix-2 decimation-in-time FFT. `data.len()` must be a power of
/// two. `inverse` applies the conjugate transform and the 1/n scaling.
pub fn fft(data: &mut [Complex64], inverse: bool) {
    let n = data.len();
    assert!(n.is_power_of_two(), "fft length must be a power of two");
    if n <= 1 {
        return;
    }
    // bit-reversal permutation
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            data.swap(i, j);
        }
    }
    let sign = if inverse { 1.0 } else { -1.0 };
    let mut len = 2;
    while len <= n {
        let ang = sign * 2.0 * std::f64::consts::PI / len as f64;
        let wlen = Complex64::from_polar(1.0, ang);
        let mut i = 0;
        while i < n {
            let mut w = Complex64::new(1.0, 0.0);
            for k in 0..len / 2 {
                let u = data[i + k];
                let v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
            i += len;
        }
        len <<= 1;
    }
    if inverse {
        let scale = 1.0 / n as f64;
        for x in data.iter_mut() {
            *x *= scale;
        }
    }
}

/// Cyclic convolution through the frequency domain; both inputs are padded
/// to the next power of two at least `min_len`.
fn circulant_apply(first_col: &[Complex64], x: &[Complex64], out_len: usize) -> Vec<Complex64> {
    let m = first_col.len().max(x.len()).next_power_of_two();
    let mut fa: Vec<Complex64> = first_col.to_vec();
    fa.resize(m, Complex64::new(0.0, 0.0));
    let mut fx: Vec<Complex64> = x.to_vec();
    fx.resize(m, Complex64::new(0.0, 0.0));
    fft(&mut fa, false);
    fft(&mut fx, false);
    for (a, b) in fa.iter_mut().zip(&fx) {
        *a *= b;
    }
    fft(&mut fa, true);
    fa.truncate(out_len);
    fa
}

/// A reusable FFT plan for products with one fixed Toeplitz matrix: the
/// circulant embedding's spectrum is computed once.
#[derive(Debug, Clone)]
pub struct ToeplitzProduct {
    n: usize,
    /// frequency-domain image of the embedded first column
    spectrum: Vec<Complex64>,
}

impl ToeplitzProduct {
    pub fn new<S: Scalar>(t: &ToeplitzMatrix<S>) -> Self {
        let n = t.n();
        // circulant embedding of size >= 2n, padded to a power of two:
        // first column [c_0 .. c_{n-1}, *, r_{n-1} .. r_1] with the wrap
        // region zero-padded
        let m = (2 * n).next_power_of_two();
        let mut col = vec![Complex64::new(0.0, 0.0); m];
        for (i, &c) in t.first_col().iter().enumerate() {
            col[i] = c.to_complex();
        }
        for (j, &r) in t.first_row().iter().enumerate().skip(1) {
            col[m - j] = r.to_complex();
        }
        fft(&mut col, false);
        ToeplitzProduct { n, spectrum: col }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `T x` for a complex vector of length n.
    pub fn apply_complex(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.n);
        let m = self.spectrum.len();
        let mut fx = vec![Complex64::new(0.0, 0.0); m];
        fx[..self.n].copy_from_slice(x);
        fft(&mut fx, false);
        for (a, s) in fx.iter_mut().zip(&self.spectrum) {
            *a *= s;
        }
        fft(&mut fx, true);
        fx.truncate(self.n);
        fx
    }

    /// `T x` mapped back into the scalar type of the caller.
    pub fn apply<S: Scalar>(&self, x: &[S]) -> Vec<S> {
        let cx: Vec<Complex64> = x.iter().map(|&v| v.to_complex()).collect();
        self.apply_complex(&cx).into_iter().map(S::from_complex).collect()
    }
}

/// One-shot Toeplitz matrix-vector product via the circulant embedding.
pub fn toeplitz_matvec<S: Scalar>(t: &ToeplitzMatrix<S>, x: &[S]) -> Vec<S> {
    ToeplitzProduct::new(t).apply(x)
}

/// Convolution helper exposed for tests.
pub fn cyclic_convolution(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    assert_eq!(a.len(), b.len());
    circulant_apply(a, b, a.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    #[test]
    fn fft_round_trip() {
        let mut rng = SplitMix64::new(2);
        let mut data: Vec<Complex64> =
            (0..64).map(|_| Complex64::new(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0))).collect();
        let orig = data.clone();
        fft(&mut data, false);
        fft(&mut data, true);
        for (a, b) in data.iter().zip(&orig) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn fft_of_impulse_is_flat() {
        let mut data = vec![Complex64::new(0.0, 0.0); 8];
        data[0] = Complex64::new(1.0, 0.0);
        fft(&mut data, false);
        for x in data {
            assert!((x - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn identity_toeplitz_is_identity_product() {
        let n = 10;
        let mut col = vec![0.0f64; n];
        col[0] = 1.0;
        let t = ToeplitzMatrix::symmetric(col).unwrap();
        let x: Vec<f64> = (0..n).map(|i| i as f64 - 3.0).collect();
        let y = toeplitz_matvec(&t, &x);
        for (a, b) in y.iter().zip(&x) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn unit_vector_recovers_first_column() {
        let mut rng = SplitMix64::new(3);
        let n = 13;
        let col: Vec<f64> = (0..n).map(|_| rng.uniform(-1.0, 1.0)).collect();
        let mut row: Vec<f64> = (0..n).map(|_| rng.uniform(-1.0, 1.0)).collect();
        row[0] = col[0];
        let t = ToeplitzMatrix::new(col.clone(), row).unwrap();
        let mut e1 = vec![0.0; n];
        e1[0] = 1.0;
        let y = toeplitz_matvec(&t, &e1);
        for (a, b) in y.iter().zip(&col) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn matches_direct_product_various_sizes() {
        let mut rng = SplitMix64::new(4);
        for n in [3usize, 17, 100, 500] {
            let col: Vec<f64> = (0..n).map(|_| rng.uniform(-1.0, 1.0)).collect();
            let mut row: Vec<f64> = (0..n).map(|_| rng.uniform(-1.0, 1.0)).collect();
            row[0] = col[0];
            let t = ToeplitzMatrix::new(col, row).unwrap();
            let x: Vec<f64> = (0..n).map(|_| rng.uniform(-1.0, 1.0)).collect();
            let fast = toeplitz_matvec(&t, &x);
            let direct = t.to_dense().matvec(&x);
            let scale = direct.iter().map(|v| v.abs()).fold(0.0, f64::max).max(1.0);
            for (a, b) in fast.iter().zip(&direct) {
                assert!((a - b).abs() < 1e-11 * scale, "n={n}");
            }
        }
    }
}
