//! Scalar abstraction over `f64` and `Complex64`.
//!
//! Matrix storage and the generic kernels (polynomial evaluation, Padé
//! exponential, LU, FFT plumbing) are written once against this trait.

use num_complex::Complex64;
use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

pub trait Scalar:
    Copy
    + PartialEq
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
    + Sum
    + Send
    + Sync
    + 'static
{
    const ZERO: Self;
    const ONE: Self;

    fn from_f64(x: f64) -> Self;
    /// Complex conjugate (identity on reals).
    fn conj(self) -> Self;
    /// Modulus |x| as a real number.
    fn abs(self) -> f64;
    fn re(self) -> f64;
    fn im(self) -> f64;
    fn to_complex(self) -> Complex64;
    /// Project a complex value back into this scalar type. For `f64` the
    /// imaginary part is discarded; callers are responsible for only doing
    /// this where the imaginary part is roundoff.
    fn from_complex(z: Complex64) -> Self;
    fn is_finite(self) -> bool;
    /// True when the type itself is real-valued.
    const IS_REAL: bool;
}

impl Scalar for f64 {
    const ZERO: Self = 0.0;
    const ONE: Self = 1.0;

    #[inline]
    fn from_f64(x: f64) -> Self {
        x
    }
    #[inline]
    fn conj(self) -> Self {
        self
    }
    #[inline]
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    #[inline]
    fn re(self) -> f64 {
        self
    }
    #[inline]
    fn im(self) -> f64 {
        0.0
    }
    #[inline]
    fn to_complex(self) -> Complex64 {
        Complex64::new(self, 0.0)
    }
    #[inline]
    fn from_complex(z: Complex64) -> Self {
        z.re
    }
    #[inline]
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    const IS_REAL: bool = true;
}

impl Scalar for Complex64 {
    const ZERO: Self = Complex64::new(0.0, 0.0);
    const ONE: Self = Complex64::new(1.0, 0.0);

    #[inline]
    fn from_f64(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    #[inline]
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    #[inline]
    fn abs(self) -> f64 {
        self.norm()
    }
    #[inline]
    fn re(self) -> f64 {
        self.re
    }
    #[inline]
    fn im(self) -> f64 {
        self.im
    }
    #[inline]
    fn to_complex(self) -> Complex64 {
        self
    }
    #[inline]
    fn from_complex(z: Complex64) -> Self {
        z
    }
    #[inline]
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    const IS_REAL: bool = false;
}
