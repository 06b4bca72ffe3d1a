//! Structured pass/fail records shared by the verification suites.

use serde::Serialize;

/// Failures kept per check; the count keeps going past this.
pub const MAX_RECORDED_FAILURES: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub item: String,
    pub residual: String,
    /// Lowest λ-power at which the residual is nonzero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_order: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    pub failures: Vec<Failure>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), checked: 0, failed: 0, failures: Vec::new() }
    }

    pub fn pass(&mut self) {
        self.checked += 1;
    }

    pub fn fail(&mut self, item: impl Into<String>, residual: impl Into<String>, lambda_order: Option<usize>) {
        self.checked += 1;
        self.failed += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(Failure { item: item.into(), residual: residual.into(), lambda_order });
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>) -> Self {
        Self { suite: suite.into(), checks: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Lowest λ-order over all recorded failures.
    pub fn first_failing_order(&self) -> Option<usize> {
        self.checks.iter().flat_map(|c| &c.failures).filter_map(|f| f.lambda_order).min()
    }
}
