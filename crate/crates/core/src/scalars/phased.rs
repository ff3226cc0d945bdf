use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{approximate_rational, fmt_rational, rational_to_f64, BigRational};

/// `exp(2 pi i k/m) * |mu|^e` for a base `|mu| > 0` supplied by context.
///
/// The phase is kept reduced (`0 <= k < m`, `gcd(k, m) = 1`), so two values
/// are equal exactly when their fields are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PhasedPower {
    k: u64,
    m: u64,
    e: BigRational,
}

impl PhasedPower {
    pub fn new(k: i64, m: u64, e: BigRational) -> Self {
        assert!(m > 0, "phase order must be positive");
        let k = k.rem_euclid(m as i64) as u64;
        let g = k.gcd(&m);
        Self {
            k: k / g,
            m: m / g,
            e,
        }
    }

    pub fn one() -> Self {
        Self::new(0, 1, BigRational::zero())
    }

    /// The pure root of unity `zeta(k/m)`.
    pub fn root_of_unity(k: i64, m: u64) -> Self {
        Self::new(k, m, BigRational::zero())
    }

    /// The positive real `|mu|^e`.
    pub fn modulus(e: BigRational) -> Self {
        Self::new(0, 1, e)
    }

    /// `mu` itself, with its sign stored as a phase.
    pub fn signed_mu(mu_negative: bool) -> Self {
        Self::new(i64::from(mu_negative), 2, BigRational::one())
    }

    pub fn phase_numerator(&self) -> u64 {
        self.k
    }

    pub fn phase_order(&self) -> u64 {
        self.m
    }

    pub fn modulus_exponent(&self) -> &BigRational {
        &self.e
    }

    /// A phase in the sense of modulus one; decided on the exponent alone,
    /// which is exact whenever the base differs from one.
    pub fn is_phase(&self) -> bool {
        self.e.is_zero()
    }

    pub fn pow(&self, n: i64) -> Self {
        let m = self.m as i128;
        let k = ((self.k as i128 * n as i128).rem_euclid(m)) as i64;
        Self::new(k, self.m, &self.e * BigRational::from_integer(n.into()))
    }

    pub fn inv(&self) -> Self {
        self.pow(-1)
    }

    pub fn conj(&self) -> Self {
        Self::new(-(self.k as i64), self.m, self.e.clone())
    }

    /// Reads `value` as `zeta(k/m) * mu_abs^e` with small denominators, checked
    /// against the floating value to `1e-9` relative error.
    pub fn recognize(
        value: Complex64,
        mu_abs: &BigRational,
        max_phase_order: i64,
        max_exponent_den: i64,
    ) -> Option<Self> {
        let norm = value.norm();
        if norm == 0.0 || !norm.is_finite() {
            return None;
        }
        let base = rational_to_f64(mu_abs);
        let e = if base == 1.0 {
            BigRational::zero()
        } else {
            approximate_rational(norm.ln() / base.ln(), max_exponent_den, 1e-7)?
        };
        let turns = (value.arg() / (2.0 * std::f64::consts::PI)).rem_euclid(1.0);
        let phase = approximate_rational(turns, max_phase_order, 1e-9)?;
        let m = u64::try_from(phase.denom().clone()).ok()?;
        let k = i64::try_from(phase.numer().clone()).ok()?;
        let candidate = Self::new(k, m, e);
        let back = candidate.evaluate(mu_abs);
        ((back - value).norm() <= 1e-9 * norm).then_some(candidate)
    }

    pub fn evaluate(&self, mu_abs: &BigRational) -> Complex64 {
        let modulus = if self.e.is_zero() {
            1.0
        } else {
            rational_to_f64(mu_abs).powf(rational_to_f64(&self.e))
        };
        let angle = 2.0 * std::f64::consts::PI * self.k as f64 / self.m as f64;
        Complex64::from_polar(modulus, angle)
    }
}

impl Mul for &PhasedPower {
    type Output = PhasedPower;

    fn mul(self, rhs: &PhasedPower) -> PhasedPower {
        let l = self.m.lcm(&rhs.m);
        let k = self.k * (l / self.m) + rhs.k * (l / rhs.m);
        PhasedPower::new((k % l) as i64, l, &self.e + &rhs.e)
    }
}

impl Mul for PhasedPower {
    type Output = PhasedPower;

    fn mul(self, rhs: PhasedPower) -> PhasedPower {
        &self * &rhs
    }
}

impl fmt::Display for PhasedPower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "zeta({}/{})*|mu|^({})",
            self.k,
            self.m,
            fmt_rational(&self.e)
        )
    }
}
