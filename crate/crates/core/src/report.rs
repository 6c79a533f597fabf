//! Outcome of a self-check.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Number of individual comparisons made.
    pub compared: usize,
    pub detail: String,
}

impl CheckReport {
    pub fn new(name: &str) -> Self {
        CheckReport { name: name.into(), passed: true, compared: 0, detail: String::new() }
    }
    /// Records one comparison; the first failure's message is kept.
    pub fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.compared += 1;
        if !ok && self.passed {
            self.passed = false;
            self.detail = what();
        }
    }
    pub fn note(mut self, s: impl Into<String>) -> Self {
        if self.passed {
            self.detail = s.into();
        }
        self
    }
}
