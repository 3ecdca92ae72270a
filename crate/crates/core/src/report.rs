//! Check reports shared by every verification suite.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

/// Outcome of one identity check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// Every compared coefficient matched.
    Pass,
    /// At least one coefficient differed; see the witnesses.
    Fail,
    /// A window overflow prevented the comparison; not a pass.
    Inconclusive,
    /// A negative finding that the theory predicts (e.g. an algebra that is
    /// correctly reported as not admitting some structure).
    ExpectedNegative,
}

/// Result of checking one identity over a parameter set.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    /// Name of the identity being checked.
    pub identity: String,
    /// Parameters the check ran at (windows included verbatim).
    pub params: BTreeMap<String, String>,
    pub verdict: Verdict,
    /// Failing coefficients or other diagnostics; empty on a clean pass.
    pub witnesses: Vec<String>,
    /// Number of coefficient comparisons performed.
    pub checked: u64,
}

impl CheckReport {
    pub fn new(identity: &str) -> Self {
        CheckReport {
            identity: identity.to_string(),
            params: BTreeMap::new(),
            verdict: Verdict::Pass,
            witnesses: Vec::new(),
            checked: 0,
        }
    }

    pub fn with_param(mut self, key: &str, value: impl fmt::Display) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn set_param(&mut self, key: &str, value: impl fmt::Display) {
        self.params.insert(key.to_string(), value.to_string());
    }

    pub fn tick(&mut self) {
        self.checked += 1;
    }

    pub fn fail(&mut self, witness: impl fmt::Display) {
        self.verdict = Verdict::Fail;
        if self.witnesses.len() < 32 {
            self.witnesses.push(witness.to_string());
        }
    }

    pub fn inconclusive(&mut self, note: impl fmt::Display) {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::Inconclusive;
        }
        self.witnesses.push(note.to_string());
    }

    pub fn expected_negative(&mut self, note: impl fmt::Display) {
        if self.verdict == Verdict::Pass {
            self.verdict = Verdict::ExpectedNegative;
        }
        self.witnesses.push(note.to_string());
    }

    /// Record a coefficient comparison, failing on mismatch.
    pub fn compare<T: PartialEq + fmt::Debug>(
        &mut self,
        site: impl fmt::Display,
        got: &T,
        want: &T,
    ) {
        self.tick();
        if got != want {
            self.fail(format!("{site}: got {got:?}, want {want:?}"));
        }
    }

    pub fn passed(&self) -> bool {
        matches!(self.verdict, Verdict::Pass | Verdict::ExpectedNegative)
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Inconclusive => "INCONCLUSIVE",
            Verdict::ExpectedNegative => "EXPECTED-NEGATIVE",
        };
        write!(
            f,
            "[{tag}] {} ({} comparisons)",
            self.identity, self.checked
        )?;
        if !self.params.is_empty() {
            let params: Vec<String> = self
                .params
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect();
            write!(f, " {{{}}}", params.join(", "))?;
        }
        for w in &self.witnesses {
            write!(f, "\n    - {w}")?;
        }
        Ok(())
    }
}
