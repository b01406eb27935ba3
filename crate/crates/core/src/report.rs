//! Serializable verification results. Every number is a decimal string so
//! that reports round-trip without loss.

use serde::{Deserialize, Serialize};

use crate::bannai::ShiftOrder;
use crate::genfun::{GenfunForm, SignAgreement};
use crate::numcore::rational::{self, Rational};
use crate::numcore::Hp;
use crate::racah::UCandidate;
use crate::spherewave::ContextEcho;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub max_abs_err: String,
    pub max_rel_err: String,
    pub tolerance: String,
    pub pass: bool,
}

impl CheckResult {
    /// A floating check; passes iff `rel <= tol`.
    pub fn new(name: impl Into<String>, abs: &Hp, rel: &Hp, tol: &Hp) -> Self {
        let digits = abs.precision().decimal_digits();
        CheckResult {
            name: name.into(),
            max_abs_err: abs.to_sci_string(digits),
            max_rel_err: rel.to_sci_string(digits),
            tolerance: tol.to_sci_string(digits),
            pass: rel <= tol,
        }
    }

    /// An exact check with zero tolerance.
    pub fn exact(name: impl Into<String>, abs: &Rational, rel: &Rational) -> Self {
        CheckResult {
            name: name.into(),
            max_abs_err: rational::to_string(abs),
            max_rel_err: rational::to_string(rel),
            tolerance: "0".to_string(),
            pass: rel == &Rational::from_integer(0.into()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub shift_order: ShiftOrder,
    pub u_candidate: UCandidate,
    pub genfun_form: GenfunForm,
    pub corrupt_phase: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportConfig {
    pub precision: u32,
    pub seed: u64,
    pub flags: Flags,
}

/// One cell of the generating-function sign table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignCell {
    #[serde(rename = "S")]
    pub s: usize,
    #[serde(rename = "K")]
    pub k: usize,
    pub agreement: SignAgreement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: String,
    pub context: ContextEcho,
    pub config: ReportConfig,
    pub checks: Vec<CheckResult>,
    /// Empty unless the generating-function suite ran.
    pub signs: Vec<SignCell>,
    pub pass: bool,
}

impl VerifyReport {
    pub fn new(suite: impl Into<String>, context: ContextEcho, config: ReportConfig, checks: Vec<CheckResult>, signs: Vec<SignCell>) -> Self {
        let pass = checks.iter().all(|c| c.pass);
        VerifyReport {
            suite: suite.into(),
            context,
            config,
            checks,
            signs,
            pass,
        }
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn sign_mismatches(&self) -> Vec<(usize, usize)> {
        self.signs
            .iter()
            .filter(|c| c.agreement == SignAgreement::Mismatch)
            .map(|c| (c.s, c.k))
            .collect()
    }
}
