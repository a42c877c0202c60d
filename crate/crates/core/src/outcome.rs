use std::collections::BTreeMap;

use serde::Serialize;

/// Result of an executable check: pass/fail, the first counterexample found,
/// and the dimensions of the spaces involved.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Outcome {
    pub passed: bool,
    pub witness: Option<String>,
    pub dims: BTreeMap<String, usize>,
}

impl Outcome {
    pub fn pass() -> Self {
        Outcome { passed: true, ..Default::default() }
    }

    pub fn fail(witness: impl Into<String>) -> Self {
        Outcome { passed: false, witness: Some(witness.into()), ..Default::default() }
    }

    pub fn with_dim(mut self, key: &str, value: usize) -> Self {
        self.dims.insert(key.to_string(), value);
        self
    }

    /// Keeps the first failure; dimensions are merged.
    pub fn and(mut self, other: Outcome) -> Outcome {
        if self.passed && !other.passed {
            self.passed = false;
            self.witness = other.witness;
        }
        self.dims.extend(other.dims);
        self
    }
}
