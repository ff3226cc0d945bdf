use num_complex::Complex64;
use serde::Serialize;

use crate::braiding::{
    braiding, hecke_kappa_word, standard_conjugate_fundamental, BraidingSpec, Variant,
};
use crate::error::Result;
use crate::hecke::{represent_word, HeckeParams};
use crate::scalars::DEFAULT_TOLERANCE;
use crate::spectrum;
use crate::tensor::{self, Limits};

/// Operator norm of
/// `(R*⊗1_u)(1_ū⊗σ(u,u)) - (R*⊗1_u)(1_ū⊗σ_d(u,u))` on `ū⊗u⊗u`, which
/// vanishes exactly when the two braidings agree after capping with `R*`.
pub fn defect_51(spec: &BraidingSpec, limits: &Limits) -> Result<f64> {
    let d = spec.d();
    limits.check_apply("braiding defect", tensor::dim(d, 2 * d))?;
    let pair = standard_conjugate_fundamental::<Complex64>(spec.params());
    let cap = pair
        .s()
        .adjoint()
        .pad(0, 1)
        .scaled(&Complex64::new(pair.lambda(), 0.0));
    let side = |v: Variant| -> Result<_> {
        cap.compose(&braiding::<Complex64>(spec, v, 1, 1)?.pad(d - 1, 0))?
            .materialize(limits)
    };
    let diff = side(Variant::Sigma)?.sub(&side(Variant::Dual)?);
    Ok(spectrum::operator_norm(&diff))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumCheck {
    pub n: usize,
    /// Largest distance between sorted eigenvalues, relative to the spectral radius.
    pub distance: f64,
    pub passed: bool,
}

fn hecke_word_spectrum(p: &HeckeParams, n: usize, limits: &Limits) -> Result<Vec<Complex64>> {
    let m = represent_word::<Complex64>(p, &hecke_kappa_word(n), n)?.materialize(limits)?;
    spectrum::eigenvalues(&m)
}

/// Eigenvalues of `η_μ(G_{n-1}^{-1} ... G_1^{-1})` against `η_{-μ}` of the same word.
pub fn mu_sign_spectrum_check(p: &HeckeParams, n: usize, limits: &Limits) -> Result<SpectrumCheck> {
    limits.check_materialize("spectrum sign check", tensor::dim(p.d(), n))?;
    let a = hecke_word_spectrum(p, n, limits)?;
    let b = hecke_word_spectrum(&p.negated(), n, limits)?;
    let distance = spectrum::multiset_distance(&a, &b).unwrap_or(f64::INFINITY);
    Ok(SpectrumCheck {
        n,
        distance,
        passed: distance <= DEFAULT_TOLERANCE,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational;

    #[test]
    fn defect_vanishes_only_at_unit_modulus() {
        let limits = Limits::default();
        for (d, n, m) in [(2, 1, 1), (3, 1, 1), (2, -1, 1)] {
            let spec = BraidingSpec::new(HeckeParams::new(d, rational(n, m)).unwrap(), 0);
            assert!(defect_51(&spec, &limits).unwrap() <= 1e-9);
        }
        for (d, n, m) in [(2, 1, 2), (2, 2, 1), (3, 1, 2), (3, 2, 1)] {
            for spec in BraidingSpec::all(&HeckeParams::new(d, rational(n, m)).unwrap()) {
                assert!(defect_51(&spec, &limits).unwrap() > 1e-3, "{spec}");
            }
        }
    }

    #[test]
    fn sign_invariance() {
        let limits = Limits::default();
        for (d, n) in [(3, 2), (3, 3), (2, 2)] {
            let p = HeckeParams::new(d, rational(1, 2)).unwrap();
            let check = mu_sign_spectrum_check(&p, n, &limits).unwrap();
            assert!(check.passed, "{check:?}");
        }
        let p = HeckeParams::new(2, rational(1, 1)).unwrap();
        assert!(mu_sign_spectrum_check(&p, 2, &limits).unwrap().passed);
    }
}
