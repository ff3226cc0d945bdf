//! Pass/fail records for verified identities.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::scalars::{Scalar, DEFAULT_TOLERANCE};
use crate::tensor::{Limits, TensorOperator};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    /// Column-norm size of `lhs - rhs`; exactly zero for exact passes.
    pub defect: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl IdentityCheck {
    pub fn new(name: impl Into<String>, passed: bool, defect: f64) -> Self {
        Self {
            name: name.into(),
            passed,
            defect,
            detail: None,
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    /// Compares two operators: exact equality for exact backends, relative
    /// tolerance otherwise.
    pub fn operators<F: Scalar>(
        name: impl Into<String>,
        lhs: &TensorOperator<F>,
        rhs: &TensorOperator<F>,
        limits: &Limits,
    ) -> Result<Self> {
        let a = lhs.materialize(limits)?;
        let b = rhs.materialize(limits)?;
        let defect = a.defect(&b);
        let passed = a.equals(&b, DEFAULT_TOLERANCE);
        Ok(Self::new(name, passed, defect))
    }

    /// Compares two scalars in the same way.
    pub fn scalars<F: Scalar>(name: impl Into<String>, lhs: &F, rhs: &F) -> Self {
        let diff = lhs.clone() - rhs.clone();
        let defect = if F::EXACT && diff.is_zero() {
            0.0
        } else {
            diff.norm()
        };
        let passed = if F::EXACT {
            lhs == rhs
        } else {
            defect <= DEFAULT_TOLERANCE * lhs.norm().max(rhs.norm())
        };
        Self::new(name, passed, defect)
    }
}

pub fn all_passed(checks: &[IdentityCheck]) -> bool {
    checks.iter().all(|c| c.passed)
}
