use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{rational_power, rational_to_f64, BigRational, PhasedPower, Scalar};

/// Reduction data for `Q(zeta_m)`: `x^j mod Phi_m` for every `j < m`.
struct FieldTable {
    order: u64,
    degree: usize,
    powers: Vec<Vec<i64>>,
    units: Vec<u64>,
}

fn integer_poly_div(num: &[i64], den: &[i64]) -> Vec<i64> {
    // den is monic
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quo = vec![0i64; num.len() - dd];
    for i in (0..quo.len()).rev() {
        let c = rem[i + dd];
        quo[i] = c;
        if c != 0 {
            for (j, &b) in den.iter().enumerate() {
                rem[i + j] -= c * b;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quo
}

fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    let mut p = vec![0i64; m as usize + 1];
    p[0] = -1;
    p[m as usize] = 1;
    for d in 1..m {
        if m % d == 0 {
            p = integer_poly_div(&p, &cyclotomic_polynomial(d));
        }
    }
    p
}

impl FieldTable {
    fn build(order: u64) -> Self {
        let phi = cyclotomic_polynomial(order);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x and reduce with the monic Phi
            let top = cur[degree - 1];
            for i in (1..degree).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            for i in 0..degree {
                cur[i] -= top * phi[i];
            }
        }
        let units = (1..=order)
            .filter(|t| t.gcd(&order) == 1)
            .map(|t| t % order)
            .collect();
        Self {
            order,
            degree,
            powers,
            units,
        }
    }

    fn get(order: u64) -> Arc<FieldTable> {
        static CACHE: OnceLock<RwLock<HashMap<u64, Arc<FieldTable>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(t) = cache.read().unwrap().get(&order) {
            return t.clone();
        }
        let table = Arc::new(FieldTable::build(order));
        cache.write().unwrap().entry(order).or_insert(table).clone()
    }

    /// Reduces `sum_j c_j zeta^j` (indices mod `order`) to the power basis.
    fn reduce(&self, exps: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); self.degree];
        for (j, c) in exps.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (slot, &b) in out.iter_mut().zip(&self.powers[j % self.order as usize]) {
                if b != 0 {
                    *slot += c * BigRational::from_integer(BigInt::from(b));
                }
            }
        }
        out
    }
}

/// An element of the cyclotomic field `Q(zeta_m)`, stored in the power basis
/// `1, zeta, ..., zeta^(phi(m)-1)` modulo the `m`-th cyclotomic polynomial.
///
/// Operands of different orders are lifted to the least common multiple.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u64,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `c * zeta_m^k`.
    pub fn root_of_unity(k: i64, m: u64, c: BigRational) -> Self {
        let table = FieldTable::get(m);
        let mut exps = vec![BigRational::zero(); m as usize];
        exps[k.rem_euclid(m as i64) as usize] = c;
        Self {
            order: m,
            coeffs: table.reduce(&exps),
        }
    }

    /// Builds `sum_j c_j zeta_m^j` from coefficients indexed by residues.
    pub fn from_residues(m: u64, residues: &[(u64, BigRational)]) -> Self {
        let table = FieldTable::get(m);
        let mut exps = vec![BigRational::zero(); m as usize];
        for (j, c) in residues {
            exps[(*j % m) as usize] += c;
        }
        Self {
            order: m,
            coeffs: table.reduce(&exps),
        }
    }

    fn lift(&self, target: u64) -> Self {
        if target == self.order {
            return self.clone();
        }
        let step = target / self.order;
        let table = FieldTable::get(target);
        let mut exps = vec![BigRational::zero(); target as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            exps[(i as u64 * step % target) as usize] = c.clone();
        }
        Self {
            order: target,
            coeffs: table.reduce(&exps),
        }
    }

    fn align(&self, other: &Self) -> (Self, Self) {
        let l = self.order.lcm(&other.order);
        (self.lift(l), other.lift(l))
    }

    /// Applies the Galois automorphism `zeta -> zeta^t`.
    fn galois(&self, t: u64) -> Self {
        let m = self.order;
        let table = FieldTable::get(m);
        let mut exps = vec![BigRational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            exps[(i as u64 * t % m) as usize] += c;
        }
        Self {
            order: m,
            coeffs: table.reduce(&exps),
        }
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{c}"),
                _ => format!("{c}*z{}^{i}", self.order),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if self.order == other.order {
            return self.coeffs == other.coeffs;
        }
        let (a, b) = self.align(other);
        a.coeffs == b.coeffs
    }
}

impl Add for Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: Cyclotomic) -> Cyclotomic {
        let (a, b) = self.align(&rhs);
        let coeffs = a
            .coeffs
            .into_iter()
            .zip(b.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        Cyclotomic {
            order: a.order,
            coeffs,
        }
    }
}

impl Sub for Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: Cyclotomic) -> Cyclotomic {
        self + (-rhs)
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: Cyclotomic) -> Cyclotomic {
        if let Some(q) = rhs.as_rational() {
            return Cyclotomic {
                order: self.order,
                coeffs: self.coeffs.into_iter().map(|c| c * &q).collect(),
            };
        }
        if let Some(q) = self.as_rational() {
            return Cyclotomic {
                order: rhs.order,
                coeffs: rhs.coeffs.into_iter().map(|c| c * &q).collect(),
            };
        }
        let (a, b) = self.align(&rhs);
        let m = a.order as usize;
        let mut exps = vec![BigRational::zero(); m];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    exps[(i + j) % m] += x * y;
                }
            }
        }
        let table = FieldTable::get(a.order);
        Cyclotomic {
            order: a.order,
            coeffs: table.reduce(&exps),
        }
    }
}

impl Zero for Cyclotomic {
    fn zero() -> Self {
        Self {
            order: 1,
            coeffs: vec![BigRational::zero()],
        }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

impl One for Cyclotomic {
    fn one() -> Self {
        Self {
            order: 1,
            coeffs: vec![BigRational::one()],
        }
    }
}

impl Scalar for Cyclotomic {
    const EXACT: bool = true;
    const NAME: &'static str = "cyclotomic";

    fn from_rational(q: &BigRational) -> Self {
        Self {
            order: 1,
            coeffs: vec![q.clone()],
        }
    }
    fn from_phased(p: &PhasedPower, mu_abs: &BigRational) -> Option<Self> {
        let modulus = rational_power(mu_abs, p.modulus_exponent())?;
        Some(Self::root_of_unity(
            p.phase_numerator() as i64,
            p.phase_order(),
            modulus,
        ))
    }
    fn conj(&self) -> Self {
        self.galois(self.order - 1)
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Self::from_rational(&q.recip()));
        }
        // a^-1 = prod_{t != 1} sigma_t(a) / N(a), with N(a) rational
        let table = FieldTable::get(self.order);
        let mut others = Self::one();
        for &t in table.units.iter().filter(|&&t| t != 1) {
            others = others * self.galois(t);
        }
        let norm = (self.clone() * others.clone()).as_rational()?;
        Some(others.scale_rational(&norm.recip()))
    }
    fn to_c64(&self) -> Complex64 {
        let m = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                Complex64::from_polar(
                    rational_to_f64(c),
                    2.0 * std::f64::consts::PI * i as f64 / m,
                )
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational;
    use proptest::prelude::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_relations() {
        let i = Cyclotomic::root_of_unity(1, 4, rational(1, 1));
        assert_eq!(i.clone() * i.clone(), Cyclotomic::from_int(-1));
        let w = Cyclotomic::root_of_unity(1, 3, rational(1, 1));
        let sum = Cyclotomic::one() + w.clone() + w.clone() * w.clone();
        assert!(Zero::is_zero(&sum));
        // zeta_6 lifted against zeta_4 meets in Q(zeta_12)
        let z6 = Cyclotomic::root_of_unity(1, 6, rational(1, 1));
        assert_eq!(
            z6.clone() * i.clone(),
            Cyclotomic::root_of_unity(5, 12, rational(1, 1))
        );
        assert_eq!(z6.clone() * z6.conj(), Cyclotomic::one());
    }

    #[test]
    fn inverse_of_generic_element() {
        let a = Cyclotomic::from_residues(
            8,
            &[
                (0, rational(2, 1)),
                (1, rational(-1, 3)),
                (3, rational(5, 7)),
            ],
        );
        let inv = a.inv().unwrap();
        assert_eq!(a * inv, Cyclotomic::one());
        assert!(Cyclotomic::zero().inv().is_none());
    }

    fn arb_element() -> impl Strategy<Value = Cyclotomic> {
        (
            1u64..=24,
            prop::collection::vec((0u64..24, -9i64..10, 1i64..6), 1..6),
        )
            .prop_map(|(m, terms)| {
                let residues: Vec<(u64, BigRational)> = terms
                    .into_iter()
                    .map(|(j, n, d)| (j % m, rational(n, d)))
                    .collect();
                Cyclotomic::from_residues(m, &residues)
            })
    }

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= 1e-12 * a.norm().max(b.norm()).max(1.0)
    }

    proptest! {
        #[test]
        fn arithmetic_matches_complex_evaluation(a in arb_element(), b in arb_element()) {
            prop_assert!(close((a.clone() + b.clone()).to_c64(), a.to_c64() + b.to_c64()));
            prop_assert!(close((a.clone() - b.clone()).to_c64(), a.to_c64() - b.to_c64()));
            prop_assert!(close((a.clone() * b.clone()).to_c64(), a.to_c64() * b.to_c64()));
            prop_assert!(close(a.conj().to_c64(), a.to_c64().conj()));
        }

        #[test]
        fn inverse_matches_complex(a in arb_element()) {
            prop_assume!(!Zero::is_zero(&a));
            let inv = a.inv().unwrap();
            prop_assert!(close(inv.to_c64(), a.to_c64().inv()));
        }
    }
}
