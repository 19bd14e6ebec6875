//! Pass/fail reports for the cross-verification commands.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// Check not applicable (e.g. characteristic too small, guard exceeded).
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyCheck {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub status: CheckStatus,
}

impl VerifyCheck {
    pub fn compare(name: impl Into<String>, lhs: impl fmt::Display, rhs: impl fmt::Display) -> Self {
        let lhs = lhs.to_string();
        let rhs = rhs.to_string();
        let status = if lhs == rhs {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        VerifyCheck {
            name: name.into(),
            lhs,
            rhs,
            status,
        }
    }

    pub fn skip(name: impl Into<String>, reason: impl Into<String>) -> Self {
        VerifyCheck {
            name: name.into(),
            lhs: reason.into(),
            rhs: String::new(),
            status: CheckStatus::Skip,
        }
    }
}

impl fmt::Display for VerifyCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            CheckStatus::Pass => write!(f, "[PASS] {}: {} == {}", self.name, self.lhs, self.rhs),
            CheckStatus::Fail => write!(f, "[FAIL] {}: {} != {}", self.name, self.lhs, self.rhs),
            CheckStatus::Skip => write!(f, "[SKIP] {}: {}", self.name, self.lhs),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    pub fn new() -> Self {
        VerifyReport { checks: Vec::new() }
    }

    pub fn push(&mut self, check: VerifyCheck) {
        self.checks.push(check);
    }

    pub fn extend(&mut self, other: VerifyReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_pass(&self) -> bool {
        self.checks
            .iter()
            .all(|c| c.status != CheckStatus::Fail)
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let mut pass = 0;
        let mut fail = 0;
        let mut skip = 0;
        for c in &self.checks {
            match c.status {
                CheckStatus::Pass => pass += 1,
                CheckStatus::Fail => fail += 1,
                CheckStatus::Skip => skip += 1,
            }
        }
        (pass, fail, skip)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            writeln!(f, "{check}")?;
        }
        let (pass, fail, skip) = self.counts();
        write!(
            f,
            "RESULT: {} passed={pass} failed={fail} skipped={skip}",
            if self.all_pass() { "PASS" } else { "FAIL" }
        )
    }
}
