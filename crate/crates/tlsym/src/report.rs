//! Pass/fail reports produced by the verification suites.

use serde::Serialize;

use crate::config::OutputFormat;

/// How many failing cases a check keeps for display.
const KEEP: usize = 5;

#[derive(Serialize, Clone, PartialEq, Debug)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub examples: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>) -> Self {
        Check { name: name.into(), cases: 0, failures: 0, examples: Vec::new() }
    }

    /// Count one case; `detail` is only evaluated on failure.
    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < KEEP {
                self.examples.push(detail());
            }
        }
    }

    /// Record an error as a failed case.
    pub fn record_result<E: std::fmt::Display>(&mut self, r: Result<bool, E>, detail: impl FnOnce() -> String) {
        match r {
            Ok(ok) => self.record(ok, detail),
            Err(e) => self.record(false, || format!("{}: {e}", detail())),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0
    }
}

#[derive(Serialize, Clone, PartialEq, Debug)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(suite: impl Into<String>) -> Self {
        Report { suite: suite.into(), checks: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn merge(mut self, other: Report) -> Report {
        self.checks.extend(other.checks);
        self
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Json => {
                #[derive(Serialize)]
                struct Doc<'a> {
                    suite: &'a str,
                    passed: bool,
                    checks: &'a [Check],
                }
                crate::io::to_pretty(&Doc { suite: &self.suite, passed: self.passed(), checks: &self.checks })
            }
            OutputFormat::Csv => {
                let mut out = String::from("check,cases,failures,passed\n");
                for c in &self.checks {
                    out.push_str(&format!("\"{}\",{},{},{}\n", c.name.replace('"', "\"\""), c.cases, c.failures, c.passed()));
                }
                out
            }
            OutputFormat::Text => {
                let mut out = format!("{}: {}\n", self.suite, if self.passed() { "PASS" } else { "FAIL" });
                for c in &self.checks {
                    let mark = if c.passed() { "pass" } else { "FAIL" };
                    out.push_str(&format!("  [{mark}] {} ({} cases", c.name, c.cases));
                    if c.failures > 0 {
                        out.push_str(&format!(", {} failed", c.failures));
                    }
                    out.push_str(")\n");
                    for e in &c.examples {
                        out.push_str(&format!("      {e}\n"));
                    }
                }
                out
            }
        }
    }
}
