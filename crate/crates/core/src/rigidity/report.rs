use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::obstruction::{defect_51, mu_sign_spectrum_check, SpectrumCheck};
use super::{Backend, RunConfig};
use crate::braiding::{verify_braiding, BraidingSpec};
use crate::check::IdentityCheck;
use crate::error::{Error, Result};
use crate::hecke::{verify_s_relations, HeckeParams};
use crate::kw_twist::{verify_prop72, TwistSpec};
use crate::lie::{
    casimir_exponent, enumerate_dominant, is_symmetric_positive_definite, kappa_modulus,
    root_datum, type_a_fundamental_exponent, DominantWeight,
};
use crate::scalars::{fmt_rational, rational_to_f64, BigRational, Cyclotomic, Scalar};
use crate::temperley_lieb::{embed_into_sud2, loop_value, verify_tl_relations};
use crate::tensor::{self, Limits};

pub const REPORT_VERSION: &str = concat!(
    "rigidity-report/1 (",
    env!("CARGO_PKG_NAME"),
    " ",
    env!("CARGO_PKG_VERSION"),
    ")"
);

/// An identity family, as selected by `verify --suite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lie,
    Hecke,
    Braiding,
    Tl,
    Kw,
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lie" => Ok(Suite::Lie),
            "hecke" => Ok(Suite::Hecke),
            "braiding" => Ok(Suite::Braiding),
            "tl" => Ok(Suite::Tl),
            "kw" => Ok(Suite::Kw),
            other => Err(Error::Config(format!("unknown suite {other:?}"))),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Lie => "lie",
            Suite::Hecke => "hecke",
            Suite::Braiding => "braiding",
            Suite::Tl => "tl",
            Suite::Kw => "kw",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityRecord {
    pub suite: Suite,
    pub name: String,
    pub status: Status,
    pub backend: String,
    pub defect: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl IdentityRecord {
    fn from_check(suite: Suite, backend: &str, c: IdentityCheck) -> Self {
        Self {
            suite,
            name: c.name,
            status: if c.passed { Status::Pass } else { Status::Fail },
            backend: backend.to_string(),
            defect: c.defect,
            detail: c.detail,
        }
    }

    fn from_error(suite: Suite, name: String, e: &Error) -> Self {
        Self {
            suite,
            name,
            status: if matches!(e, Error::Resource { .. }) {
                Status::Skipped
            } else {
                Status::Fail
            },
            backend: String::new(),
            defect: 0.0,
            detail: Some(format!("{suite}: {e}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightRecord {
    pub weight: String,
    pub height: u32,
    pub casimir_exponent: String,
    pub casimir_exponent_value: f64,
    pub kappa_modulus: String,
    pub kappa_modulus_value: f64,
    pub is_phase: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConfigRecord {
    pub lie_type: String,
    pub mu: String,
    pub mu_value: f64,
    pub omega_index: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<String>,
    pub max_height: u32,
    pub max_power: usize,
    pub backend: Backend,
    pub threshold: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Defect51Record {
    pub omega: String,
    pub value: Option<f64>,
    pub positive: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectrumSection {
    pub mu: String,
    pub negated_mu: String,
    pub checks: Vec<SpectrumCheck>,
    pub skipped: Vec<String>,
    pub passed: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictStatus {
    Pass,
    RigidityViolation,
    IdentityFailure,
    Incomplete,
}

impl VerdictStatus {
    pub fn exit_code(self) -> i32 {
        match self {
            VerdictStatus::Pass => 0,
            VerdictStatus::RigidityViolation => 2,
            VerdictStatus::IdentityFailure => 3,
            VerdictStatus::Incomplete => 4,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub exit_code: i32,
    pub degenerate: bool,
    pub message: String,
    pub phase_weights: Vec<String>,
    pub failed: Vec<String>,
    pub skipped: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RigidityReport {
    pub config: ConfigRecord,
    pub weights: Vec<WeightRecord>,
    pub identities: Vec<IdentityRecord>,
    pub defect_51: Option<Defect51Record>,
    pub spectrum_check: Option<SpectrumSection>,
    pub verdict: Verdict,
    pub version: String,
}

fn weight_string(w: &DominantWeight) -> String {
    w.to_string()
}

/// `κ` moduli over all dominant weights up to the height bound.
pub fn kappa_table(cfg: &RunConfig) -> Result<Vec<WeightRecord>> {
    cfg.validate()?;
    let rd = root_datum(cfg.lie_type)?;
    let mu_abs = num_traits::Signed::abs(&cfg.mu);
    let base = rational_to_f64(&mu_abs);
    enumerate_dominant(cfg.lie_type.rank, cfg.max_height)
        .into_iter()
        .map(|w| {
            let e = casimir_exponent(&rd, &w)?;
            let modulus = kappa_modulus(&rd, &w)?;
            Ok(WeightRecord {
                weight: weight_string(&w),
                height: w.height(),
                casimir_exponent: fmt_rational(&e),
                casimir_exponent_value: rational_to_f64(&e),
                kappa_modulus: modulus.to_string(),
                kappa_modulus_value: base.powf(rational_to_f64(&e)),
                is_phase: modulus.is_phase() || cfg.is_degenerate(),
            })
        })
        .collect()
}

fn lie_checks(cfg: &RunConfig) -> Result<Vec<IdentityCheck>> {
    let rd = root_datum(cfg.lie_type)?;
    let mut checks = vec![IdentityCheck::new(
        "fundamental Gram matrix is symmetric positive definite",
        is_symmetric_positive_definite(rd.fundamental_gram()),
        0.0,
    )];
    if let Some(d) = cfg.type_a_d() {
        let e = casimir_exponent(&rd, &DominantWeight::fundamental(d - 1, 1))?;
        let closed = type_a_fundamental_exponent(d, 1);
        checks.push(
            IdentityCheck::new("(lambda_1, lambda_1 + 2 rho) = (d^2-1)/d", e == closed, 0.0)
                .with_detail(fmt_rational(&e)),
        );
    }
    Ok(checks)
}

/// Largest `n <= cap` with `d^n` within the materialization threshold.
fn strands(d: usize, cap: usize, limits: &Limits) -> usize {
    (1..=cap)
        .take_while(|&n| tensor::dim(d, n) <= limits.materialize)
        .last()
        .unwrap_or(0)
}

fn tl_checks<F: Scalar>(p: &HeckeParams, limits: &Limits) -> Result<Vec<IdentityCheck>> {
    let top = strands(2, 4, limits);
    let mut checks = Vec::new();
    for n in 2..=5 {
        checks.extend(
            verify_tl_relations(n, &loop_value(p.mu()))?
                .into_iter()
                .map(|c| IdentityCheck {
                    name: format!("[TL_{n}] {}", c.name),
                    ..c
                }),
        );
    }
    for n in 2..=top {
        checks.extend(embed_into_sud2::<F>(p, n, limits)?);
    }
    Ok(checks)
}

fn with_backend<R>(
    backend: Backend,
    rational: impl FnOnce() -> R,
    cyclotomic: impl FnOnce() -> R,
    floating: impl FnOnce() -> R,
) -> R {
    match backend {
        Backend::Rational => rational(),
        Backend::Cyclotomic => cyclotomic(),
        Backend::Floating => floating(),
    }
}

/// The backend a job runs in: the requested one when it holds `value`,
/// floating otherwise.
fn effective_backend(requested: Backend, holds: (bool, bool)) -> Backend {
    match (requested, holds) {
        (Backend::Rational, (true, _)) => Backend::Rational,
        (Backend::Cyclotomic, (_, true)) => Backend::Cyclotomic,
        _ => Backend::Floating,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Job {
    Checks(Suite, u64),
    Defect,
    Spectrum(usize),
}

enum Output {
    Checks(Vec<IdentityRecord>),
    Defect(Result<f64>),
    Spectrum(usize, Result<SpectrumCheck>),
}

fn run_checks(cfg: &RunConfig, suite: Suite, index: u64) -> Result<(Backend, Vec<IdentityCheck>)> {
    let limits = cfg.limits();
    if suite == Suite::Lie {
        return Ok((Backend::Rational, lie_checks(cfg)?));
    }
    let p = cfg.hecke_params()?;
    match suite {
        Suite::Lie => unreachable!("handled above"),
        Suite::Hecke => Ok((
            cfg.backend,
            with_backend(
                cfg.backend,
                || verify_s_relations::<BigRational>(&p, &limits),
                || verify_s_relations::<Cyclotomic>(&p, &limits),
                || verify_s_relations::<Complex64>(&p, &limits),
            )?,
        )),
        Suite::Tl => Ok((
            cfg.backend,
            with_backend(
                cfg.backend,
                || tl_checks::<BigRational>(&p, &limits),
                || tl_checks::<Cyclotomic>(&p, &limits),
                || tl_checks::<Complex64>(&p, &limits),
            )?,
        )),
        Suite::Braiding => {
            let spec = BraidingSpec::new(p, cfg.omega_index);
            let backend = effective_backend(
                cfg.backend,
                (
                    spec.supports::<BigRational>(),
                    spec.supports::<Cyclotomic>(),
                ),
            );
            let n = cfg.max_power;
            let checks = with_backend(
                backend,
                || verify_braiding::<BigRational>(&spec, n, &limits),
                || verify_braiding::<Cyclotomic>(&spec, n, &limits),
                || verify_braiding::<Complex64>(&spec, n, &limits),
            )?;
            Ok((backend, checks))
        }
        Suite::Kw => {
            let spec = TwistSpec::new(p, index as i64);
            let backend = effective_backend(
                cfg.backend,
                (
                    spec.supports::<BigRational>(),
                    spec.supports::<Cyclotomic>(),
                ),
            );
            let checks = with_backend(
                backend,
                || verify_prop72::<BigRational>(&spec, &limits),
                || verify_prop72::<Cyclotomic>(&spec, &limits),
                || verify_prop72::<Complex64>(&spec, &limits),
            )?;
            let prefix = format!("[w={}] ", spec.w());
            Ok((
                backend,
                checks
                    .into_iter()
                    .map(|c| IdentityCheck {
                        name: format!("{prefix}{}", c.name),
                        ..c
                    })
                    .collect(),
            ))
        }
    }
}

fn suite_jobs(cfg: &RunConfig, suite: Suite) -> Vec<Job> {
    match (suite, cfg.type_a_d()) {
        (Suite::Lie, _) => vec![Job::Checks(Suite::Lie, 0)],
        (Suite::Kw, Some(d)) => (0..d as u64).map(|w| Job::Checks(Suite::Kw, w)).collect(),
        (Suite::Tl, Some(2)) | (Suite::Hecke | Suite::Braiding, Some(_)) => {
            vec![Job::Checks(suite, 0)]
        }
        _ => Vec::new(),
    }
}

fn job_records(cfg: &RunConfig, suite: Suite, index: u64) -> Result<Vec<IdentityRecord>> {
    let (backend, checks) = run_checks(cfg, suite, index)?;
    let name = if backend == cfg.backend || suite == Suite::Lie {
        backend.to_string()
    } else {
        format!("{backend} (fallback from {})", cfg.backend)
    };
    Ok(checks
        .into_iter()
        .map(|c| IdentityRecord::from_check(suite, &name, c))
        .collect())
}

/// One suite, for `verify --suite`. Errors propagate.
pub fn run_suite(cfg: &RunConfig, suite: Suite) -> Result<Vec<IdentityRecord>> {
    cfg.validate()?;
    if suite != Suite::Lie {
        let d = cfg.hecke_params()?.d();
        if suite == Suite::Tl && d != 2 {
            return Err(Error::Config(format!(
                "the tl suite needs d = 2 (type A1), got d = {d}"
            )));
        }
    }
    let results: Vec<Result<Vec<IdentityRecord>>> = suite_jobs(cfg, suite)
        .into_par_iter()
        .map(|job| match job {
            Job::Checks(s, i) => job_records(cfg, s, i),
            _ => unreachable!("suite jobs are checks"),
        })
        .collect();
    Ok(results
        .into_iter()
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect())
}

fn run_job(cfg: &RunConfig, job: Job) -> Output {
    match job {
        Job::Checks(suite, index) => {
            Output::Checks(job_records(cfg, suite, index).unwrap_or_else(|e| {
                vec![IdentityRecord::from_error(
                    suite,
                    format!("{suite} suite"),
                    &e,
                )]
            }))
        }
        Job::Defect => Output::Defect(
            cfg.hecke_params()
                .and_then(|p| defect_51(&BraidingSpec::new(p, cfg.omega_index), &cfg.limits())),
        ),
        Job::Spectrum(n) => Output::Spectrum(
            n,
            cfg.hecke_params()
                .and_then(|p| mu_sign_spectrum_check(&p, n, &cfg.limits())),
        ),
    }
}

/// The full pipeline: weights, every identity suite, the braiding defect and
/// the sign invariance of the spectrum. Independent jobs run in parallel and
/// are merged in job order.
pub fn rigidity_report(cfg: &RunConfig) -> Result<RigidityReport> {
    cfg.validate()?;
    let weights = kappa_table(cfg)?;
    let type_a = cfg.type_a_d();

    let mut jobs = Vec::new();
    for suite in [
        Suite::Lie,
        Suite::Hecke,
        Suite::Braiding,
        Suite::Tl,
        Suite::Kw,
    ] {
        jobs.extend(suite_jobs(cfg, suite));
    }
    if let Some(d) = type_a {
        jobs.push(Job::Defect);
        jobs.extend((2..=cfg.max_power.min(d)).map(Job::Spectrum));
    }
    let outputs: Vec<Output> = jobs.par_iter().map(|&job| run_job(cfg, job)).collect();

    let mut identities = Vec::new();
    let mut defect = None;
    let mut spectrum = type_a.map(|_| SpectrumSection {
        mu: fmt_rational(&cfg.mu),
        negated_mu: fmt_rational(&-cfg.mu.clone()),
        checks: Vec::new(),
        skipped: Vec::new(),
        passed: true,
    });
    let omega = cfg
        .hecke_params()
        .ok()
        .map(|p| BraidingSpec::new(p, cfg.omega_index).omega().to_string());
    for out in outputs {
        match out {
            Output::Checks(records) => identities.extend(records),
            Output::Defect(r) => {
                let omega = omega.clone().unwrap_or_default();
                defect = Some(match r {
                    Ok(v) => Defect51Record {
                        omega,
                        value: Some(v),
                        positive: Some(v > 1e-9),
                        note: None,
                    },
                    Err(e) => Defect51Record {
                        omega,
                        value: None,
                        positive: None,
                        note: Some(e.to_string()),
                    },
                });
            }
            Output::Spectrum(n, r) => {
                let section = spectrum.as_mut().expect("type A");
                match r {
                    Ok(c) => {
                        section.passed &= c.passed;
                        section.checks.push(c);
                    }
                    Err(e @ Error::Resource { .. }) => section.skipped.push(format!("n={n}: {e}")),
                    Err(e) => {
                        section.passed = false;
                        section.skipped.push(format!("n={n}: {e}"));
                    }
                }
            }
        }
    }

    let verdict = verdict(
        cfg,
        &weights,
        &identities,
        spectrum.as_ref(),
        defect.as_ref(),
    );
    Ok(RigidityReport {
        config: ConfigRecord {
            lie_type: cfg.lie_type.to_string(),
            mu: fmt_rational(&cfg.mu),
            mu_value: rational_to_f64(&cfg.mu),
            omega_index: cfg.omega_index,
            omega,
            max_height: cfg.max_height,
            max_power: cfg.max_power,
            backend: cfg.backend,
            threshold: cfg.threshold,
        },
        weights,
        identities,
        defect_51: defect,
        spectrum_check: spectrum,
        verdict,
        version: REPORT_VERSION.to_string(),
    })
}

fn verdict(
    cfg: &RunConfig,
    weights: &[WeightRecord],
    identities: &[IdentityRecord],
    spectrum: Option<&SpectrumSection>,
    defect: Option<&Defect51Record>,
) -> Verdict {
    let degenerate = cfg.is_degenerate();
    let zero = |w: &WeightRecord| w.height == 0;
    let phase_weights: Vec<String> = if degenerate {
        Vec::new()
    } else {
        weights
            .iter()
            .filter(|w| w.is_phase && !zero(w))
            .map(|w| w.weight.clone())
            .collect()
    };
    let mut failed: Vec<String> = identities
        .iter()
        .filter(|r| r.status == Status::Fail)
        .map(|r| format!("{}: {}", r.suite, r.name))
        .collect();
    let mut skipped: Vec<String> = identities
        .iter()
        .filter(|r| r.status == Status::Skipped)
        .map(|r| format!("{}: {}", r.suite, r.name))
        .collect();
    if let Some(s) = spectrum {
        failed.extend(
            s.checks
                .iter()
                .filter(|c| !c.passed)
                .map(|c| format!("spectrum sign check n={}", c.n)),
        );
        skipped.extend(s.skipped.iter().map(|x| format!("spectrum sign check {x}")));
    }
    if let Some(Defect51Record {
        note: Some(note), ..
    }) = defect
    {
        skipped.push(format!("braiding defect: {note}"));
    }
    let status = if !phase_weights.is_empty() {
        VerdictStatus::RigidityViolation
    } else if !failed.is_empty() {
        VerdictStatus::IdentityFailure
    } else if !skipped.is_empty() {
        VerdictStatus::Incomplete
    } else {
        VerdictStatus::Pass
    };
    let message = match status {
        _ if degenerate && status == VerdictStatus::Pass => {
            "degenerate: |μ|=1, no rigidity verdict".to_string()
        }
        VerdictStatus::Pass => format!(
            "kappa is not a phase on any of the {} nonzero dominant weights of height <= {}",
            weights.iter().filter(|w| !zero(w)).count(),
            cfg.max_height
        ),
        VerdictStatus::RigidityViolation => format!(
            "kappa is a phase on {} nonzero weights",
            phase_weights.len()
        ),
        VerdictStatus::IdentityFailure => format!("{} identity checks failed", failed.len()),
        VerdictStatus::Incomplete => {
            format!("{} checks skipped for resource limits", skipped.len())
        }
    };
    Verdict {
        status,
        exit_code: status.exit_code(),
        degenerate,
        message,
        phase_weights,
        failed,
        skipped,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{LieType, Series};
    use crate::scalars::rational;

    fn cfg(series: Series, rank: usize, mu: BigRational, max_height: u32) -> RunConfig {
        RunConfig {
            lie_type: LieType::new(series, rank).unwrap(),
            mu,
            omega_index: 0,
            max_height,
            max_power: 3,
            backend: Backend::Cyclotomic,
            threshold: 4096,
        }
    }

    #[test]
    fn a1_exponents() {
        let table = kappa_table(&cfg(Series::A, 1, rational(1, 2), 3)).unwrap();
        let exps: Vec<&str> = table.iter().map(|w| w.casimir_exponent.as_str()).collect();
        assert_eq!(exps, ["0/1", "3/2", "4/1", "15/2"]);
        let phases: Vec<bool> = table.iter().map(|w| w.is_phase).collect();
        assert_eq!(phases, [true, false, false, false]);
    }

    #[test]
    fn b2_report_passes() {
        let report = rigidity_report(&cfg(Series::B, 2, rational(1, 2), 2)).unwrap();
        assert_eq!(
            report.verdict.status,
            VerdictStatus::Pass,
            "{:?}",
            report.verdict
        );
        assert!(report.defect_51.is_none() && report.spectrum_check.is_none());
    }

    #[test]
    fn control_run_is_degenerate() {
        let report = rigidity_report(&cfg(Series::A, 1, rational(1, 1), 3)).unwrap();
        assert!(report.verdict.degenerate);
        assert_eq!(
            report.verdict.message,
            "degenerate: |μ|=1, no rigidity verdict"
        );
        assert!(report
            .weights
            .iter()
            .all(|w| w.is_phase && w.kappa_modulus_value == 1.0));
        assert_eq!(report.verdict.exit_code, 0);
        assert!(report.defect_51.unwrap().value.unwrap() <= 1e-9);
    }

    #[test]
    fn a1_report_runs_every_suite() {
        let report = rigidity_report(&cfg(Series::A, 1, rational(-1, 2), 3)).unwrap();
        assert_eq!(
            report.verdict.status,
            VerdictStatus::Pass,
            "{:?}",
            report.verdict
        );
        for suite in [
            Suite::Lie,
            Suite::Hecke,
            Suite::Braiding,
            Suite::Tl,
            Suite::Kw,
        ] {
            assert!(
                report.identities.iter().any(|r| r.suite == suite),
                "{suite}"
            );
        }
    }
}
