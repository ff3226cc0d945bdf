use num_complex::Complex64;

use super::{rational_to_f64, BigRational, PhasedPower, Scalar};

/// Double-precision complex value; the numeric backend.
pub type ComplexApprox = Complex64;

/// Relative tolerance for floating comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// `|a - b| <= tol * max(|a|, |b|)`.
pub fn approx_eq(a: Complex64, b: Complex64, tol: f64) -> bool {
    let scale = a.norm().max(b.norm());
    (a - b).norm() <= tol * scale
}

impl Scalar for Complex64 {
    const EXACT: bool = false;
    const NAME: &'static str = "floating";

    fn from_rational(q: &BigRational) -> Self {
        Complex64::new(rational_to_f64(q), 0.0)
    }
    fn from_phased(p: &PhasedPower, mu_abs: &BigRational) -> Option<Self> {
        Some(p.evaluate(mu_abs))
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn inv(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(Complex64::inv(self))
        }
    }
    fn to_c64(&self) -> Complex64 {
        *self
    }
    fn sqrt_rational(q: &BigRational) -> Option<Self> {
        Some(Complex64::new(rational_to_f64(q).sqrt(), 0.0))
    }
}
