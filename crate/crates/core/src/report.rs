use serde::{Deserialize, Serialize};
use serde_json::Value;

/// One named check inside a [`VerificationReport`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Elements that replay the failure through the contract, serialized as JSON.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<Value>>,
    pub samples: u64,
}

/// Structured pass/fail record. `overall` is kept in sync with `checks`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
    pub overall: bool,
    pub exhaustive: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    /// Properties deliberately not checked, with the reason.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub out_of_scope: Vec<String>,
}

impl VerificationReport {
    pub fn new(exhaustive: bool) -> Self {
        Self {
            checks: Vec::new(),
            overall: true,
            exhaustive,
            tolerance: None,
            out_of_scope: Vec::new(),
        }
    }

    pub fn with_tolerance(mut self, tolerance: Option<f64>) -> Self {
        self.tolerance = tolerance;
        self
    }

    pub fn pass(&mut self, name: impl Into<String>, samples: u64) {
        self.push(Check {
            name: name.into(),
            passed: true,
            witness: None,
            samples,
        });
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: Vec<Value>, samples: u64) {
        self.push(Check {
            name: name.into(),
            passed: false,
            witness: Some(witness),
            samples,
        });
    }

    /// Records `name` as passed when `witness` is `None`, failed otherwise.
    pub fn record(&mut self, name: impl Into<String>, witness: Option<Vec<Value>>, samples: u64) {
        match witness {
            None => self.pass(name, samples),
            Some(w) => self.fail(name, w, samples),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.overall &= check.passed;
        self.checks.push(check);
    }

    pub fn mark_out_of_scope(&mut self, what: impl Into<String>) {
        self.out_of_scope.push(what.into());
    }

    pub fn merge(&mut self, other: VerificationReport) {
        self.exhaustive &= other.exhaustive;
        for c in other.checks {
            self.push(c);
        }
        self.out_of_scope.extend(other.out_of_scope);
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Plain-text rendering, one line per check.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {} (samples: {})", c.name, c.samples));
            if let Some(w) = &c.witness {
                let parts: Vec<String> = w.iter().map(|v| v.to_string()).collect();
                out.push_str(&format!(" witness: [{}]", parts.join(", ")));
            }
            out.push('\n');
        }
        for s in &self.out_of_scope {
            out.push_str(&format!("SKIP {s} (out of scope)\n"));
        }
        out.push_str(&format!(
            "overall: {}\n",
            if self.overall { "pass" } else { "fail" }
        ));
        out
    }
}


/// A yes/no answer with an optional counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict<W> {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<W>,
}

impl<W> Verdict<W> {
    pub fn yes() -> Self {
        Self {
            holds: true,
            witness: None,
        }
    }

    pub fn no(witness: W) -> Self {
        Self {
            holds: false,
            witness: Some(witness),
        }
    }

    /// `holds` iff `witness` is `None`.
    pub fn from_witness(witness: Option<W>) -> Self {
        Self {
            holds: witness.is_none(),
            witness,
        }
    }
}
