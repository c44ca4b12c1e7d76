//! Named pass/fail checks attached to construction outputs and decisions.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

/// An ordered list of checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Checks(Vec<Check>);

impl Checks {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, passed: bool) {
        self.0.push(Check {
            name: name.into(),
            passed,
        });
    }

    /// Records the outcome of a fallible check; an error counts as a failure.
    pub fn push_result(&mut self, name: impl Into<String>, r: crate::Result<bool>) {
        self.push(name, r.unwrap_or(false));
    }

    pub fn all_passed(&self) -> bool {
        self.0.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.0.iter().filter(|c| !c.passed)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Check> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn extend(&mut self, other: Checks) {
        self.0.extend(other.0);
    }
}

impl fmt::Display for Checks {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            writeln!(f, "{}: {}", c.name, if c.passed { "PASS" } else { "FAIL" })?;
        }
        Ok(())
    }
}
