//! Scalar backends.
//!
//! Three interchangeable coefficient domains sit behind the [`Scalar`] trait:
//! exact rationals ([`BigRational`]), exact cyclotomic numbers
//! ([`Cyclotomic`]) and double-precision complex numbers ([`ComplexApprox`]).
//! Values of the form `root of unity * |mu|^e` are carried symbolically as
//! [`PhasedPower`] and converted into a backend only when the backend can hold
//! them exactly.

mod complex;
mod cyclotomic;
mod phased;

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};

pub use num_rational::BigRational;
pub use num_traits::{One, Zero};

pub use complex::{approx_eq, ComplexApprox, DEFAULT_TOLERANCE};
pub use cyclotomic::Cyclotomic;
pub use phased::PhasedPower;

/// Coefficient domain for operators.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Zero
    + One
{
    /// Whether equality in this backend is decided exactly.
    const EXACT: bool;
    const NAME: &'static str;

    fn from_rational(q: &BigRational) -> Self;
    /// `zeta(k/m) * mu_abs^e`, when the backend holds it exactly.
    fn from_phased(p: &PhasedPower, mu_abs: &BigRational) -> Option<Self>;
    fn conj(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn to_c64(&self) -> Complex64;

    fn from_int(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(n.into()))
    }

    fn norm(&self) -> f64 {
        self.to_c64().norm()
    }

    fn scale_rational(&self, q: &BigRational) -> Self {
        self.clone() * Self::from_rational(q)
    }

    /// `sqrt(q)` for a non-negative rational, when the backend holds it.
    fn sqrt_rational(q: &BigRational) -> Option<Self> {
        rational_sqrt(q).map(|r| Self::from_rational(&r))
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;
    const NAME: &'static str = "rational";

    fn from_rational(q: &BigRational) -> Self {
        q.clone()
    }
    fn from_phased(p: &PhasedPower, mu_abs: &BigRational) -> Option<Self> {
        let sign = match (p.phase_numerator(), p.phase_order()) {
            (0, 1) => 1,
            (1, 2) => -1,
            _ => return None,
        };
        let modulus = rational_power(mu_abs, p.modulus_exponent())?;
        Some(if sign < 0 { -modulus } else { modulus })
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(rational_to_f64(self), 0.0)
    }
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Huge numerators or denominators: compare digit lengths.
            let shift = q.numer().bits() as i64 - q.denom().bits() as i64;
            let scaled = if shift > 0 {
                q / BigRational::from_integer(BigInt::one() << shift as usize)
            } else {
                q * BigRational::from_integer(BigInt::one() << (-shift) as usize)
            };
            let n = scaled.numer().to_f64().unwrap_or(0.0);
            let d = scaled.denom().to_f64().unwrap_or(1.0);
            (n / d) * 2f64.powi(shift as i32)
        }
    }
}

/// Renders a rational as `p/q`, always with an explicit denominator.
pub fn fmt_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q`, `p`, or a finite decimal such as `0.5`.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().ok()?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let q = BigRational::new(n, d);
        return Some(if negative { -q } else { q });
    }
    let n: BigInt = s.parse().ok()?;
    Some(BigRational::from_integer(n))
}

/// Exact `n`-th root of a non-negative integer, if it exists.
pub fn exact_integer_root(x: &BigInt, n: u32) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.nth_root(n);
    if num_traits::pow(r.clone(), n as usize) == *x {
        Some(r)
    } else {
        None
    }
}

/// `base^e` for positive rational `base` and rational `e`, when the result
/// is rational.
pub fn rational_power(base: &BigRational, e: &BigRational) -> Option<BigRational> {
    if !base.is_positive() {
        return None;
    }
    if e.is_zero() {
        return Some(BigRational::one());
    }
    let root_degree = e.denom().to_u32()?;
    let num = exact_integer_root(base.numer(), root_degree)?;
    let den = exact_integer_root(base.denom(), root_degree)?;
    let root = BigRational::new(num, den);
    let p = e.numer().to_i32()?;
    Some(num_traits::pow::Pow::pow(&root, p))
}

/// Best rational approximation of `x` with denominator at most `max_den`
/// (continued fractions), accepted only within `tol` of `x`.
pub fn approximate_rational(x: f64, max_den: i64, tol: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut rest = x;
    for _ in 0..64 {
        let a = rest.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i128;
        let (h2, k2) = (a * h1 + h0, a * k1 + k0);
        if k2 > max_den as i128 {
            break;
        }
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = rest - a as f64;
        if (h1 as f64 / k1 as f64 - x).abs() <= tol || frac.abs() < 1e-15 {
            break;
        }
        rest = 1.0 / frac;
    }
    if k1 == 0 || (h1 as f64 / k1 as f64 - x).abs() > tol {
        return None;
    }
    Some(BigRational::new(h1.into(), k1.into()))
}

/// Exact square root of a non-negative rational, if rational.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_zero() {
        return Some(BigRational::zero());
    }
    rational_power(q, &rational(1, 2))
}
