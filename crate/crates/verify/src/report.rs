use std::fmt;
use std::time::Duration;

use quiverlab_core::Quiver;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// Number of individual cases examined.
    pub checked: u64,
    pub failures: u64,
    pub detail: String,
}

/// A failing case: a start quiver and the mutations that lead to the failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub check: String,
    pub n: usize,
    pub arrows: Vec<(usize, usize, i32)>,
    pub mutations: Vec<usize>,
    pub note: String,
}

impl Counterexample {
    pub fn new(check: &str, q: &Quiver, mutations: Vec<usize>, note: String) -> Self {
        Counterexample { check: check.to_string(), n: q.n(), arrows: q.arrows().collect(), mutations, note }
    }

    pub fn quiver(&self) -> Quiver {
        Quiver::new(self.n, &self.arrows).expect("arrows came from a quiver")
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub checks: Vec<CheckOutcome>,
    pub counterexamples: Vec<Counterexample>,
    pub elapsed: Duration,
}

/// Counterexamples kept per report.
pub const MAX_COUNTEREXAMPLES: usize = 20;

impl VerificationReport {
    pub fn new(suite: &str) -> Self {
        VerificationReport { suite: suite.to_string(), ..Default::default() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn push(&mut self, name: impl Into<String>, checked: u64, failures: u64, detail: impl Into<String>) {
        self.checks.push(CheckOutcome {
            name: name.into(),
            passed: failures == 0,
            checked,
            failures,
            detail: detail.into(),
        });
    }

    pub fn add_counterexample(&mut self, c: Counterexample) {
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(c);
        }
    }

    /// Combine with another report. Checks of the same name are summed.
    pub fn merge(&mut self, other: VerificationReport) {
        for c in other.checks {
            match self.checks.iter_mut().find(|x| x.name == c.name) {
                Some(x) => {
                    x.checked += c.checked;
                    x.failures += c.failures;
                    x.passed &= c.passed;
                    if !c.detail.is_empty() && x.detail != c.detail {
                        if !x.detail.is_empty() {
                            x.detail.push_str("; ");
                        }
                        x.detail.push_str(&c.detail);
                    }
                }
                None => self.checks.push(c),
            }
        }
        for c in other.counterexamples {
            self.add_counterexample(c);
        }
        self.elapsed += other.elapsed;
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "report v1 suite={} result={}", self.suite, if self.passed() { "pass" } else { "fail" })?;
        for c in &self.checks {
            write!(
                f,
                "check {} {} checked={} failures={}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.checked,
                c.failures
            )?;
            if !c.detail.is_empty() {
                write!(f, " | {}", c.detail)?;
            }
            writeln!(f)?;
        }
        for c in &self.counterexamples {
            let arrows: Vec<String> = c.arrows.iter().map(|(s, t, w)| format!("{s} {t} {w}")).collect();
            let seq: Vec<String> = c.mutations.iter().map(|j| j.to_string()).collect();
            writeln!(
                f,
                "counterexample check={} n={} arrows={} mutations={} | {}",
                c.check,
                c.n,
                arrows.join(","),
                seq.join(","),
                c.note
            )?;
        }
        writeln!(f, "elapsed_ms {}", self.elapsed.as_millis())
    }
}
