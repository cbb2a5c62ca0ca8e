//! Structured pass/fail records emitted by the verification suites.

use serde::Serialize;

/// One verified claim: what was measured, against which tolerance, and the
/// verdict. Reports always embed the tolerance actually used so they are
/// self-describing.
#[derive(Debug, Clone, Serialize)]
pub struct ClaimCheck {
    pub claim: String,
    pub params: String,
    pub measured: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub claims: Vec<ClaimCheck>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            claims: Vec::new(),
            passed: true,
        }
    }

    pub fn push(
        &mut self,
        claim: impl Into<String>,
        params: impl Into<String>,
        measured: f64,
        tolerance: f64,
        pass: bool,
    ) {
        self.passed &= pass;
        self.claims.push(ClaimCheck {
            claim: claim.into(),
            params: params.into(),
            measured,
            tolerance,
            pass,
        });
    }

    pub fn absorb(&mut self, other: VerificationReport) {
        self.passed &= other.passed;
        self.claims.extend(other.claims);
    }

    pub fn failures(&self) -> impl Iterator<Item = &ClaimCheck> {
        self.claims.iter().filter(|c| !c.pass)
    }
}
