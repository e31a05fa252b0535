//! Outcome records shared by the verification routines.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Coordinates or description of the first failure.
    pub witness: Option<String>,
}

impl Check {
    pub fn ok(name: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass: false,
            witness: Some(witness.into()),
        }
    }

    pub fn from_bool(name: impl Into<String>, pass: bool, witness: impl FnOnce() -> String) -> Self {
        if pass {
            Check::ok(name)
        } else {
            Check::fail(name, witness())
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "pass" } else { "FAIL" };
        match &self.witness {
            Some(w) => write!(f, "{} {} ({})", self.name, verdict, w),
            None => write!(f, "{} {}", self.name, verdict),
        }
    }
}

/// Collapses a list of checks into the first failure, if any.
pub fn first_failure(checks: &[Check]) -> Option<&Check> {
    checks.iter().find(|c| !c.pass)
}
