//! Braided symmetries `σ_ω` on `Rep(SU_μ(d))` and the invariant `κ`.
//!
//! On tensor powers of the fundamental object `u`, `σ(u^m, u^n)` is
//! `(ω/μ)^{mn}` times the JW image of the shuffle braid that moves the first
//! `m` strands past the last `n`, where `ω` is one of the `d` roots of
//! `ω^d = μ`. The conjugate pair of `u` is realized inside `u^{⊗d}` through
//! the determinant vector `S`, with `ū = E_{d-1} u^{⊗(d-1)}`.

use std::fmt;

use num_complex::Complex64;
use num_traits::One;

use crate::check::IdentityCheck;
use crate::error::{Error, Result};
use crate::hecke::{
    antisymmetrizer, determinant_vector, jw_block, jw_inverse_block, quantum_factorial,
    represent_word, BraidWord, HeckeParams,
};
use crate::lie::{
    casimir_exponent, gl_dimension, partition_to_weight, partitions, root_datum, standard_tableaux,
};
use crate::lie::{LieType, Series};
use crate::scalars::{rational_to_f64, BigRational, PhasedPower, Scalar, DEFAULT_TOLERANCE};
use crate::spectrum;
use crate::tensor::{self, collinear_coefficient, vector_norm, Limits, TensorOperator};

/// `(d, μ)` together with the choice of `ω`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidingSpec {
    params: HeckeParams,
    omega_index: u64,
}

impl BraidingSpec {
    /// `ω = ζ_{2d}^{2k + [μ<0]} |μ|^{1/d}` for `k = omega_index mod d`.
    pub fn new(params: HeckeParams, omega_index: i64) -> Self {
        let d = params.d() as i64;
        Self {
            omega_index: omega_index.rem_euclid(d) as u64,
            params,
        }
    }

    /// All `d` braided symmetries for these parameters.
    pub fn all(params: &HeckeParams) -> Vec<Self> {
        (0..params.d() as i64)
            .map(|k| Self::new(params.clone(), k))
            .collect()
    }

    pub fn params(&self) -> &HeckeParams {
        &self.params
    }

    pub fn d(&self) -> usize {
        self.params.d()
    }

    pub fn omega_index(&self) -> u64 {
        self.omega_index
    }

    pub fn mu_abs(&self) -> BigRational {
        self.params.mu_abs()
    }

    pub fn omega(&self) -> PhasedPower {
        let d = self.d() as u64;
        let j = 2 * self.omega_index as i64 + i64::from(self.params.mu_negative());
        PhasedPower::new(j, 2 * d, BigRational::new(1.into(), (d as i64).into()))
    }

    pub fn mu_phased(&self) -> PhasedPower {
        PhasedPower::signed_mu(self.params.mu_negative())
    }

    pub fn omega_over_mu(&self) -> PhasedPower {
        &self.omega() * &self.mu_phased().inv()
    }

    /// `(ωμ)^{d-1}`, the closed form as usually stated.
    pub fn closed_form_kappa(&self) -> PhasedPower {
        (&self.omega() * &self.mu_phased()).pow(self.d() as i64 - 1)
    }

    /// `(ω|μ|)^{d-1}`, which is what the conjugate equations force; it agrees
    /// with [`closed_form_kappa`](Self::closed_form_kappa) unless `μ < 0` and `d` is even.
    pub fn kappa_fundamental_expected(&self) -> PhasedPower {
        (&self.omega() * &PhasedPower::modulus(BigRational::one())).pow(self.d() as i64 - 1)
    }

    pub fn scalar<F: Scalar>(&self, p: &PhasedPower) -> Result<F> {
        F::from_phased(p, &self.mu_abs()).ok_or_else(|| Error::Unrepresentable {
            backend: F::NAME,
            value: p.to_string(),
        })
    }

    /// Whether `ω` lives in the backend `F`.
    pub fn supports<F: Scalar>(&self) -> bool {
        F::from_phased(&self.omega(), &self.mu_abs()).is_some()
    }
}

impl fmt::Display for BraidingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}, omega={}", self.params, self.omega())
    }
}

/// The braid that moves strands `1..=m` past strands `m+1..=m+n`, in product
/// order (the last letter acts first).
pub fn shuffle_word(m: usize, n: usize) -> BraidWord {
    let mut applied = Vec::with_capacity(m * n);
    for t in (1..=m).rev() {
        applied.extend((t..t + n).map(|i| (i, 1)));
    }
    applied.reverse();
    BraidWord::new(applied)
}

/// `σ(u^{⊗m}, u^{⊗n}) : u^{⊗(m+n)} -> u^{⊗(n+m)}`.
pub fn sigma<F: Scalar>(spec: &BraidingSpec, m: usize, n: usize) -> Result<TensorOperator<F>> {
    let total = m + n;
    if m == 0 || n == 0 {
        return Ok(TensorOperator::identity(spec.d(), total));
    }
    let c = spec.scalar::<F>(&spec.omega_over_mu().pow((m * n) as i64))?;
    Ok(represent_word::<F>(spec.params(), &shuffle_word(m, n), total)?.scaled(&c))
}

/// The braided symmetries attached to `σ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    /// `σ` itself.
    Sigma,
    /// `σ_{-1}(u,v) = σ(v,u)^{-1}`.
    Reverse,
    /// `σ_*(u,v) = σ(v,u)^*`.
    Adjoint,
    /// `σ_d(u,v) = (σ(u,v)^*)^{-1}`.
    Dual,
}

pub fn braiding<F: Scalar>(
    spec: &BraidingSpec,
    variant: Variant,
    m: usize,
    n: usize,
) -> Result<TensorOperator<F>> {
    match variant {
        Variant::Sigma => sigma(spec, m, n),
        Variant::Reverse => sigma(spec, n, m)?.inverse(),
        Variant::Adjoint => Ok(sigma(spec, n, m)?.adjoint()),
        Variant::Dual => sigma(spec, m, n)?.adjoint().inverse(),
    }
}

/// Standard solution `R = λS ∈ (ι, ū⊗u)`, `R̄ = εR ∈ (ι, u⊗ū)` of the
/// conjugate equations for `u`. `λ²` is rational; `λ` itself is only needed
/// when the operator `R` is asked for.
#[derive(Clone, Debug)]
pub struct ConjugatePair<F> {
    params: HeckeParams,
    s: TensorOperator<F>,
    lambda_squared: BigRational,
    epsilon: i8,
}

impl<F: Scalar> ConjugatePair<F> {
    pub fn s(&self) -> &TensorOperator<F> {
        &self.s
    }

    pub fn lambda_squared(&self) -> &BigRational {
        &self.lambda_squared
    }

    pub fn lambda(&self) -> f64 {
        rational_to_f64(&self.lambda_squared).sqrt()
    }

    /// `R̄ = ε R`.
    pub fn epsilon(&self) -> i8 {
        self.epsilon
    }

    /// `‖R‖² = ‖R̄‖² = λ² d!_q`.
    pub fn norm_squared(&self) -> BigRational {
        &self.lambda_squared * quantum_factorial(self.params.d(), &self.params.q())
    }

    pub fn r(&self) -> Result<TensorOperator<F>> {
        let lambda =
            F::sqrt_rational(&self.lambda_squared).ok_or_else(|| Error::Unrepresentable {
                backend: F::NAME,
                value: format!("sqrt({})", self.lambda_squared),
            })?;
        Ok(self.s.scaled(&lambda))
    }

    pub fn r_bar(&self) -> Result<TensorOperator<F>> {
        Ok(self.r()?.scaled(&F::from_int(self.epsilon.into())))
    }

    /// `ε λ²`, the coefficient of `S^* ... S` in every zigzag.
    fn zigzag_coefficient(&self) -> F {
        F::from_rational(&(&self.lambda_squared * BigRational::from_integer(self.epsilon.into())))
    }
}

/// `λ² = 1 / ((d-1)!_q |μ|^{d-1})` and `ε = (-sgn μ)^{d-1}`.
pub fn standard_conjugate_fundamental<F: Scalar>(params: &HeckeParams) -> ConjugatePair<F> {
    let d = params.d();
    let lambda_squared =
        (quantum_factorial(d - 1, &params.q()) * num_traits::pow(params.mu_abs(), d - 1)).recip();
    let epsilon = if params.mu_negative() || d % 2 == 1 {
        1
    } else {
        -1
    };
    ConjugatePair {
        params: params.clone(),
        s: determinant_vector(params),
        lambda_squared,
        epsilon,
    }
}

/// Both conjugate equations, and `R ∈ ū⊗u`.
pub fn verify_conjugate_equations<F: Scalar>(
    pair: &ConjugatePair<F>,
    limits: &Limits,
) -> Result<Vec<IdentityCheck>> {
    let d = pair.params.d();
    let s = &pair.s;
    let s_adj = s.adjoint();
    let c = pair.zigzag_coefficient();
    let e_bar = antisymmetrizer::<F>(&pair.params, d - 1, limits)?;
    let mut checks = Vec::new();

    let in_ubar = e_bar.pad(0, 1).compose(s)?;
    checks.push(IdentityCheck::operators(
        "R lies in ubar⊗u",
        &in_ubar,
        s,
        limits,
    )?);

    let first = s_adj.pad(0, 1).compose(&s.pad(1, 0))?.scaled(&c);
    checks.push(IdentityCheck::operators(
        "(Rbar*⊗1)(1⊗R) = 1_u",
        &first,
        &TensorOperator::identity(d, 1),
        limits,
    )?);

    let second = e_bar
        .compose(&s_adj.pad(0, d - 1).compose(&s.pad(d - 1, 0))?.scaled(&c))?
        .compose(&e_bar)?;
    checks.push(IdentityCheck::operators(
        "(R*⊗1)(1⊗Rbar) = 1_ubar",
        &second,
        &e_bar,
        limits,
    )?);
    Ok(checks)
}

/// A value of `κ`, numerically and, when recognized and confirmed in an exact
/// backend, as `zeta(k/m) |μ|^e`.
#[derive(Clone, Debug, PartialEq)]
pub struct KappaValue {
    pub numeric: Complex64,
    pub exact: Option<PhasedPower>,
}

impl KappaValue {
    pub fn from_scalar<F: Scalar>(c: &F, mu_abs: &BigRational) -> Self {
        let numeric = c.to_c64();
        let exact = if F::EXACT {
            PhasedPower::recognize(numeric, mu_abs, 48, 240)
                .filter(|p| F::from_phased(p, mu_abs).as_ref() == Some(c))
        } else {
            None
        };
        Self { numeric, exact }
    }

    pub fn modulus(&self) -> f64 {
        self.numeric.norm()
    }
}

impl fmt::Display for KappaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(p) => write!(f, "{p}"),
            None => write!(f, "{:.12}{:+.12}i", self.numeric.re, self.numeric.im),
        }
    }
}

fn check_residual(what: &str, residual: f64, scale: f64) -> Result<()> {
    if residual <= DEFAULT_TOLERANCE * scale.max(1.0) {
        Ok(())
    } else {
        Err(Error::Inconsistent {
            module: "braiding",
            detail: format!("{what}: residual {residual:e} off the expected line"),
        })
    }
}

/// `κ_r(u)` for a braided symmetry `β`, read off `β(u,ū) R̄ = κ R`.
pub fn kappa_right<F: Scalar>(spec: &BraidingSpec, variant: Variant, limits: &Limits) -> Result<F> {
    let d = spec.d();
    let pair = standard_conjugate_fundamental::<F>(spec.params());
    let r_bar = pair.s.scaled(&F::from_int(pair.epsilon.into()));
    let image = braiding::<F>(spec, variant, 1, d - 1)?
        .compose(&r_bar)?
        .as_vector(limits)?;
    let target = pair.s.as_vector(limits)?;
    let (c, residual) = collinear_coefficient(&image, &target)?;
    check_residual("beta(u,ubar) Rbar", residual, vector_norm(&image))?;
    Ok(c)
}

/// `κ(u)` by the definition, for `σ` itself.
pub fn kappa_fundamental<F: Scalar>(spec: &BraidingSpec, limits: &Limits) -> Result<F> {
    kappa_right(spec, Variant::Sigma, limits)
}

/// `κ(u)` from the defining composite, with its exact form when the backend
/// decides equality.
pub fn kappa_fundamental_direct<F: Scalar>(
    spec: &BraidingSpec,
    limits: &Limits,
) -> Result<KappaValue> {
    Ok(KappaValue::from_scalar(
        &kappa_fundamental::<F>(spec, limits)?,
        &spec.mu_abs(),
    ))
}

/// `λ² (S*⊗1)(1⊗β(u,u))(S⊗1)`, a scalar on `u`; its inverse is `κ_l(u)`.
fn left_zigzag<F: Scalar>(
    spec: &BraidingSpec,
    beta: &TensorOperator<F>,
    limits: &Limits,
) -> Result<F> {
    let d = spec.d();
    let pair = standard_conjugate_fundamental::<F>(spec.params());
    let op = pair
        .s
        .adjoint()
        .pad(0, 1)
        .compose(&beta.pad(d - 1, 0))?
        .compose(&pair.s.pad(0, 1))?
        .scaled(&F::from_rational(&pair.lambda_squared));
    let (c, residual) = op.scalar_multiple_of(&TensorOperator::identity(d, 1), limits)?;
    check_residual("left zigzag", residual, c.norm())?;
    Ok(c)
}

/// `κ_l(u)` for a braided symmetry `β` via the left formula.
pub fn kappa_left<F: Scalar>(spec: &BraidingSpec, variant: Variant, limits: &Limits) -> Result<F> {
    let beta = braiding::<F>(spec, variant, 1, 1)?;
    left_zigzag(spec, &beta, limits)?
        .inv()
        .ok_or(Error::Singular)
}

/// The two left formulas for `σ`: `κ^{-1}` from `η(g)` and `κ` from `η(g)^{-1}`.
pub fn kappa_via_left_formula<F: Scalar>(spec: &BraidingSpec, limits: &Limits) -> Result<(F, F)> {
    let inverse = left_zigzag(spec, &sigma::<F>(spec, 1, 1)?, limits)?;
    let direct = left_zigzag(spec, &braiding::<F>(spec, Variant::Reverse, 1, 1)?, limits)?;
    Ok((direct, inverse))
}

/// `Σ_k^{-1}` with `Σ_k = σ_k ... σ_1 σ_1 ... σ_k` on `n` strands.
fn sigma_palindrome_inverse<F: Scalar>(
    spec: &BraidingSpec,
    k: usize,
    n: usize,
) -> Result<TensorOperator<F>> {
    let c = spec.scalar::<F>(&spec.omega_over_mu().pow(-2 * k as i64))?;
    Ok(represent_word::<F>(spec.params(), &BraidWord::palindrome(k).inverse(), n)?.scaled(&c))
}

/// `κ(u^{⊗n}) = Σ_{n-1}^{-1} ∘ ... ∘ Σ_1^{-1} ∘ κ(u)^n`.
pub fn kappa_power_via_sigma<F: Scalar>(
    spec: &BraidingSpec,
    n: usize,
    kappa_u: &F,
) -> Result<TensorOperator<F>> {
    let d = spec.d();
    let mut op = TensorOperator::identity(d, n);
    for k in (1..n).rev() {
        op = op.compose(&sigma_palindrome_inverse(spec, k, n)?)?;
    }
    let power = (0..n).fold(F::one(), |acc, _| acc * kappa_u.clone());
    Ok(op.scaled(&power))
}

/// `G_{n-1}^{-1} ... G_1^{-1}`.
pub fn hecke_kappa_word(n: usize) -> BraidWord {
    (1..n).rev().fold(BraidWord::identity(), |w, k| {
        w.then(&BraidWord::palindrome(k).inverse())
    })
}

/// `(ω/μ)^{-n(n-1)} (ωμ)^{n(d-1)}`.
pub fn hecke_kappa_prefactor(spec: &BraidingSpec, n: usize) -> PhasedPower {
    let n = n as i64;
    let d = spec.d() as i64;
    let omega_mu = &spec.omega() * &spec.mu_phased();
    &spec.omega_over_mu().pow(-n * (n - 1)) * &omega_mu.pow(n * (d - 1))
}

/// `(ω/μ)^{-n(n-1)} (ωμ)^{n(d-1)} η(G_{n-1}^{-1} ... G_1^{-1})`.
pub fn kappa_power_via_hecke<F: Scalar>(
    spec: &BraidingSpec,
    n: usize,
) -> Result<TensorOperator<F>> {
    let c = spec.scalar::<F>(&hecke_kappa_prefactor(spec, n))?;
    Ok(represent_word::<F>(spec.params(), &hecke_kappa_word(n), n)?.scaled(&c))
}

/// Sign relating the two routes: `(ω|μ|)^{d-1} = s (ωμ)^{d-1}`, so the σ route
/// equals `s^n` times the Hecke route.
pub fn route_sign(spec: &BraidingSpec, n: usize) -> i64 {
    if spec.params().mu_negative() && spec.d() % 2 == 0 && n % 2 == 1 {
        -1
    } else {
        1
    }
}

/// Moduli `|μ|^{(λ, λ+2ρ)}` of `κ` on `u^{⊗n}`, with multiplicities, from
/// Schur–Weyl duality. Sorted by exponent, equal exponents merged.
pub fn expected_kappa_moduli(d: usize, n: usize) -> Result<Vec<(BigRational, usize)>> {
    let rd = root_datum(LieType::new(Series::A, d - 1)?)?;
    let mut out: Vec<(BigRational, usize)> = Vec::new();
    for shape in partitions(n, d) {
        let e = casimir_exponent(&rd, &partition_to_weight(&shape, d))?;
        let mult = (gl_dimension(&shape, d) * standard_tableaux(&shape)) as usize;
        match out.iter_mut().find(|(x, _)| *x == e) {
            Some((_, m)) => *m += mult,
            None => out.push((e, mult)),
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Eigenvalues of `κ(u^{⊗n})` (σ route, floating), sorted by modulus.
///
/// `κ(u^{⊗n})` is a scalar times `η(G_{n-1}^{-1} ... G_1^{-1})`, a product of
/// commuting positive operators, so the scalar is divided out and the
/// symmetric solver does the work.
pub fn kappa_spectrum(spec: &BraidingSpec, n: usize, limits: &Limits) -> Result<Vec<Complex64>> {
    let kappa_u = kappa_fundamental::<Complex64>(spec, limits)?;
    let scale = kappa_u.powu(n as u32)
        * spec
            .omega_over_mu()
            .pow(-((n * n.saturating_sub(1)) as i64))
            .evaluate(&spec.mu_abs());
    let m = kappa_power_via_sigma(spec, n, &kappa_u)?.materialize(limits)?;
    let mut values: Vec<Complex64> = spectrum::eigenvalues(&m.scale(&scale.inv()))?
        .into_iter()
        .map(|v| v * scale)
        .collect();
    spectrum::sort_eigenvalues(&mut values);
    Ok(values)
}

/// Groups moduli that agree to `1e-8` relative, with an absolute floor of
/// `1e-13` times the largest (the accuracy of a dense eigensolver).
fn group_moduli(values: impl IntoIterator<Item = (f64, usize)>) -> Vec<(f64, usize)> {
    let mut values: Vec<(f64, usize)> = values.into_iter().collect();
    values.sort_by(|a, b| a.0.total_cmp(&b.0));
    let floor = 1e-13 * values.last().map_or(0.0, |v| v.0);
    let mut out: Vec<(f64, usize)> = Vec::new();
    for (m, k) in values {
        match out.last_mut() {
            Some((rep, count)) if (m - *rep).abs() <= 1e-8 * m.max(*rep) + floor => *count += k,
            _ => out.push((m, k)),
        }
    }
    out
}

/// Compares the eigenvalue moduli of `κ(u^{⊗n})` with the weight prediction.
pub fn verify_kappa_spectrum(
    spec: &BraidingSpec,
    n: usize,
    limits: &Limits,
) -> Result<IdentityCheck> {
    let found = group_moduli(
        kappa_spectrum(spec, n, limits)?
            .into_iter()
            .map(|v| (v.norm(), 1)),
    );
    let base = rational_to_f64(&spec.mu_abs());
    let expected = group_moduli(
        expected_kappa_moduli(spec.d(), n)?
            .into_iter()
            .map(|(e, k)| (base.powf(rational_to_f64(&e)), k)),
    );
    let floor = 1e-13 * expected.last().map_or(0.0, |v| v.0);
    let passed = found.len() == expected.len()
        && found
            .iter()
            .zip(&expected)
            .all(|(a, b)| a.1 == b.1 && (a.0 - b.0).abs() <= 1e-8 * a.0.max(b.0) + floor);
    let defect = found
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a.0 - b.0).abs() / a.0.max(b.0))
        .fold(0.0, f64::max);
    let detail = found
        .iter()
        .map(|(m, k)| format!("{m:.6e} x{k}"))
        .collect::<Vec<_>>()
        .join(", ");
    Ok(IdentityCheck::new(
        format!("spectrum of kappa(u^{n}) matches weights"),
        passed,
        defect,
    )
    .with_detail(detail))
}

/// `κ(u⊗z) = (σ(z,u) ∘ σ(u,z))^{-1} ∘ (κ(u) ⊗ κ(z))` with `z = u^{⊗(n-1)}`.
pub fn verify_tensor_formula<F: Scalar>(
    spec: &BraidingSpec,
    n: usize,
    kappa_u: &F,
    limits: &Limits,
) -> Result<IdentityCheck> {
    let z = n - 1;
    let lhs = kappa_power_via_sigma(spec, n, kappa_u)?;
    let monodromy = sigma::<F>(spec, z, 1)?.compose(&sigma::<F>(spec, 1, z)?)?;
    let product = kappa_power_via_sigma(spec, z, kappa_u)?
        .pad(1, 0)
        .scaled(kappa_u);
    let rhs = monodromy.inverse()?.compose(&product)?;
    IdentityCheck::operators(format!("kappa(u⊗u^{z}) tensor formula"), &lhs, &rhs, limits)
}

/// Relations between `κ` for `σ`, `σ_{-1}`, `σ_*` and `σ_d` on `u`.
pub fn verify_dual_relations<F: Scalar>(
    spec: &BraidingSpec,
    limits: &Limits,
) -> Result<Vec<IdentityCheck>> {
    let kappa = kappa_right::<F>(spec, Variant::Sigma, limits)?;
    let inv = kappa.inv().ok_or(Error::Singular)?;
    Ok(vec![
        IdentityCheck::scalars(
            "kappa_l[sigma_-1](u) = kappa_r(u)^-1",
            &kappa_left::<F>(spec, Variant::Reverse, limits)?,
            &inv,
        ),
        IdentityCheck::scalars(
            "kappa_l[sigma_*](u) = conj kappa_r(u)",
            &kappa_left::<F>(spec, Variant::Adjoint, limits)?,
            &kappa.conj(),
        ),
        IdentityCheck::scalars(
            "kappa_r[sigma_d](u) = conj kappa_r(u)^-1",
            &kappa_right::<F>(spec, Variant::Dual, limits)?,
            &inv.conj(),
        ),
    ])
}

/// Largest `k <= cap` with `d^k` inside the materialization limit.
fn strand_budget(d: usize, cap: usize, limits: &Limits) -> usize {
    (1..=cap)
        .take_while(|&k| tensor::dim(d, k) <= limits.materialize)
        .last()
        .unwrap_or(0)
}

/// The full invariant suite for one `ω`: braid relations, naturality,
/// hexagons, conjugate equations, every route to `κ` and the modulus law.
pub fn verify_braiding<F: Scalar>(
    spec: &BraidingSpec,
    max_power: usize,
    limits: &Limits,
) -> Result<Vec<IdentityCheck>> {
    let d = spec.d();
    let p = spec.params();
    limits.check_materialize("braiding suite", tensor::dim(d, d + 1))?;
    let mut checks = Vec::new();

    let c = spec.scalar::<F>(&spec.omega_over_mu())?;
    let block = jw_block::<F>(p).scale(&c);
    let s1 = TensorOperator::local(d, 3, 0, 2, 2, block.clone());
    let s2 = TensorOperator::local(d, 3, 1, 2, 2, block);
    checks.push(IdentityCheck::operators(
        "Yang-Baxter",
        &s1.compose(&s2)?.compose(&s1)?,
        &s2.compose(&s1)?.compose(&s2)?,
        limits,
    )?);
    let inv_block = jw_inverse_block::<F>(p).scale(&c.inv().ok_or(Error::Singular)?);
    let s1_inv = TensorOperator::local(d, 3, 0, 2, 2, inv_block);
    checks.push(IdentityCheck::operators(
        "sigma block inverse",
        &s1.compose(&s1_inv)?,
        &TensorOperator::identity(d, 3),
        limits,
    )?);

    let s = determinant_vector::<F>(p);
    checks.push(IdentityCheck::operators(
        "sigma(u^d,u)(S⊗1) = 1⊗S",
        &sigma::<F>(spec, d, 1)?.compose(&s.pad(0, 1))?,
        &s.pad(1, 0),
        limits,
    )?);

    let hex = strand_budget(d, 5, &Limits::with_materialize(limits.materialize.min(256)));
    for total in 3..=hex {
        for m in 1..total - 1 {
            for m2 in 1..total - m {
                let n = total - m - m2;
                let lhs = sigma::<F>(spec, m + m2, n)?;
                let rhs = sigma::<F>(spec, m, n)?
                    .pad(0, m2)
                    .compose(&sigma::<F>(spec, m2, n)?.pad(m, 0))?;
                checks.push(IdentityCheck::operators(
                    format!("hexagon sigma(u^{m}⊗u^{m2},u^{n})"),
                    &lhs,
                    &rhs,
                    limits,
                )?);
                let lhs = sigma::<F>(spec, n, m + m2)?;
                let rhs = sigma::<F>(spec, n, m2)?
                    .pad(m, 0)
                    .compose(&sigma::<F>(spec, n, m)?.pad(0, m2))?;
                checks.push(IdentityCheck::operators(
                    format!("hexagon sigma(u^{n},u^{m}⊗u^{m2})"),
                    &lhs,
                    &rhs,
                    limits,
                )?);
            }
        }
    }

    let pair = standard_conjugate_fundamental::<F>(p);
    checks.extend(verify_conjugate_equations(&pair, limits)?);

    let kappa = kappa_fundamental::<F>(spec, limits)?;
    let (left, left_inverse) = kappa_via_left_formula::<F>(spec, limits)?;
    checks.push(IdentityCheck::scalars(
        "kappa(u): left formula = definition",
        &left,
        &kappa,
    ));
    checks.push(IdentityCheck::scalars(
        "kappa(u): left formulas are inverse",
        &(left * left_inverse),
        &F::one(),
    ));
    let expected = spec.kappa_fundamental_expected();
    let kv = KappaValue::from_scalar(&kappa, &spec.mu_abs());
    match F::from_phased(&expected, &spec.mu_abs()) {
        Some(e) => checks.push(
            IdentityCheck::scalars("kappa(u) = (omega |mu|)^(d-1)", &kappa, &e)
                .with_detail(kv.to_string()),
        ),
        None => {
            let e = expected.evaluate(&spec.mu_abs());
            checks.push(
                IdentityCheck::scalars("kappa(u) = (omega |mu|)^(d-1)", &kv.numeric, &e)
                    .with_detail(kv.to_string()),
            );
        }
    }
    let modulus = rational_to_f64(&spec.mu_abs()).powf(rational_to_f64(
        &crate::lie::type_a_fundamental_exponent(d, 1),
    ));
    checks.push(IdentityCheck::scalars(
        "|kappa(u)| = |mu|^((d^2-1)/d)",
        &Complex64::new(kv.modulus(), 0.0),
        &Complex64::new(modulus, 0.0),
    ));

    let e_bar = antisymmetrizer::<F>(p, d - 1, limits)?;
    let on_ubar = kappa_power_via_sigma(spec, d - 1, &kappa)?.compose(&e_bar)?;
    let (kappa_bar, residual) = on_ubar.scalar_multiple_of(&e_bar, limits)?;
    check_residual("kappa on ubar", residual, kappa_bar.norm())?;
    checks.push(
        IdentityCheck::scalars(
            "|kappa(ubar)| = |mu|^((d^2-1)/d)",
            &Complex64::new(kappa_bar.norm(), 0.0),
            &Complex64::new(modulus, 0.0),
        )
        .with_detail(KappaValue::from_scalar(&kappa_bar, &spec.mu_abs()).to_string()),
    );

    checks.extend(verify_dual_relations::<F>(spec, limits)?);

    let copy = s.pad(0, 1);
    checks.push(IdentityCheck::operators(
        "kappa(u^(d+1))(S⊗1) = kappa(u)(S⊗1)",
        &kappa_power_via_sigma(spec, d + 1, &kappa)?.compose(&copy)?,
        &copy.scaled(&kappa),
        limits,
    )?);

    for n in 2..=strand_budget(d, max_power, limits) {
        let via_sigma = kappa_power_via_sigma(spec, n, &kappa)?;
        let sign = F::from_int(route_sign(spec, n));
        let via_hecke = kappa_power_via_hecke::<F>(spec, n)?.scaled(&sign);
        let mut check = IdentityCheck::operators(
            format!("kappa(u^{n}): sigma route = hecke route"),
            &via_sigma,
            &via_hecke,
            limits,
        )?;
        if route_sign(spec, n) < 0 {
            check = check.with_detail("hecke route multiplied by (-1)^n for mu < 0, d even");
        }
        checks.push(check);
        checks.push(verify_tensor_formula(spec, n, &kappa, limits)?);
    }
    let spectral = strand_budget(
        d,
        max_power,
        &Limits::with_materialize(limits.materialize.min(729)),
    );
    for n in 1..=spectral {
        checks.push(verify_kappa_spectrum(spec, n, limits)?);
    }
    Ok(checks)
}
