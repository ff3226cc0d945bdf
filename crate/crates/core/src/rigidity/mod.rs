//! Run configuration, the obstruction checks and the rigidity report.

mod format;
mod obstruction;
mod report;

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hecke::HeckeParams;
use crate::lie::{LieType, Series};
use crate::scalars::{fmt_rational, BigRational};
use crate::tensor::Limits;

pub use format::{render, render_identities, render_weights, Format};
pub use obstruction::{defect_51, mu_sign_spectrum_check, SpectrumCheck};
pub use report::{
    kappa_table, rigidity_report, run_suite, ConfigRecord, Defect51Record, IdentityRecord,
    RigidityReport, SpectrumSection, Status, Suite, Verdict, VerdictStatus, WeightRecord,
    REPORT_VERSION,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Rational,
    Cyclotomic,
    Floating,
}

impl FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(Backend::Rational),
            "cyclotomic" => Ok(Backend::Cyclotomic),
            "floating" => Ok(Backend::Floating),
            other => Err(Error::Config(format!("unknown backend {other:?}"))),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Rational => "rational",
            Backend::Cyclotomic => "cyclotomic",
            Backend::Floating => "floating",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub lie_type: LieType,
    pub mu: BigRational,
    pub omega_index: i64,
    pub max_height: u32,
    pub max_power: usize,
    pub backend: Backend,
    pub threshold: usize,
}

impl RunConfig {
    /// Checks the parameter ranges: `μ ≠ 0` always, and `μ > 0`, `μ ≠ 1` outside type A.
    pub fn validate(&self) -> Result<()> {
        if self.mu.is_zero() {
            return Err(Error::Config("mu must be nonzero".into()));
        }
        if self.lie_type.series != Series::A && (!self.mu.is_positive() || self.mu.is_one()) {
            return Err(Error::Config(format!(
                "type {} needs 0 < mu < 1 or mu > 1, got {}",
                self.lie_type.series.letter(),
                fmt_rational(&self.mu)
            )));
        }
        if self.threshold == 0 {
            return Err(Error::Config("threshold must be positive".into()));
        }
        Ok(())
    }

    pub fn limits(&self) -> Limits {
        Limits::with_materialize(self.threshold)
    }

    /// `|μ| = 1`: no rigidity verdict is possible.
    pub fn is_degenerate(&self) -> bool {
        self.mu.abs().is_one()
    }

    /// `d = rank + 1` for type A.
    pub fn type_a_d(&self) -> Option<usize> {
        (self.lie_type.series == Series::A).then_some(self.lie_type.rank + 1)
    }

    pub fn hecke_params(&self) -> Result<HeckeParams> {
        let d = self.type_a_d().ok_or_else(|| {
            Error::Config(format!(
                "operator suites need type A, got {}",
                self.lie_type
            ))
        })?;
        HeckeParams::new(d, self.mu.clone())
    }
}
