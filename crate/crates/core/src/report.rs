//! Verification reports shared by every checker.

use std::fmt;

use serde::Serialize;

/// Which side of the theory a check was computed on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Formulation {
    /// Sign-explicit relation systems on unsuspended components.
    #[serde(rename = "unsuspended-relations")]
    UnsuspendedRelations,
    /// Identities between lifted maps on the (marked) bar construction.
    #[serde(rename = "suspended-bar")]
    SuspendedBar,
    /// Purely combinatorial checks on diagrams and posets.
    #[serde(rename = "combinatorial")]
    Combinatorial,
}

impl fmt::Display for Formulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formulation::UnsuspendedRelations => "unsuspended-relations",
            Formulation::SuspendedBar => "suspended-bar",
            Formulation::Combinatorial => "combinatorial",
        })
    }
}

/// A concrete failure: the input tuple and the two sides that disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub tuple: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub formulation: Formulation,
    pub passed: bool,
    /// Number of tuples or words evaluated.
    pub evaluated: usize,
    /// Arities at which at least one individual term was nonzero.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub active_arities: Vec<usize>,
    /// Arities at which the relation failed.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failing_arities: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl Check {
    pub fn new(name: impl Into<String>, formulation: Formulation) -> Self {
        Check {
            name: name.into(),
            formulation,
            passed: true,
            evaluated: 0,
            active_arities: Vec::new(),
            failing_arities: Vec::new(),
            counterexample: None,
        }
    }

    /// Records a failure, keeping the first counterexample.
    pub fn fail(&mut self, cx: Counterexample) {
        self.passed = false;
        if self.counterexample.is_none() {
            self.counterexample = Some(cx);
        }
    }

    pub fn mark_active(&mut self, arity: usize) {
        if let Err(i) = self.active_arities.binary_search(&arity) {
            self.active_arities.insert(i, arity);
        }
    }

    pub fn mark_failing(&mut self, arity: usize) {
        if let Err(i) = self.failing_arities.binary_search(&arity) {
            self.failing_arities.insert(i, arity);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub subject: String,
    pub verdict: Verdict,
    /// Whether the two formulations reached the same verdict (and, where
    /// compared, agree tuple by tuple).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agreement: Option<bool>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(subject: impl Into<String>, checks: Vec<Check>, agreement: Option<bool>) -> Self {
        let ok = checks.iter().all(|c| c.passed) && agreement != Some(false);
        Report {
            subject: subject.into(),
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            agreement,
            checks,
            timing_ms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Verdict of all checks in one formulation.
    pub fn formulation_passed(&self, f: Formulation) -> bool {
        self.checks
            .iter()
            .filter(|c| c.formulation == f)
            .all(|c| c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{v} {}", self.subject)?;
        for c in &self.checks {
            let mark = if c.passed { "ok  " } else { "FAIL" };
            write!(f, "  {mark} [{}] {} ({} evaluated", c.formulation, c.name, c.evaluated)?;
            if !c.active_arities.is_empty() {
                write!(f, "; active arities {:?}", c.active_arities)?;
            }
            writeln!(f, ")")?;
            if let Some(cx) = &c.counterexample {
                writeln!(f, "       at ({})", cx.tuple.join(", "))?;
                writeln!(f, "       lhs = {}", cx.lhs)?;
                writeln!(f, "       rhs = {}", cx.rhs)?;
            }
        }
        if let Some(a) = self.agreement {
            writeln!(
                f,
                "  formulations {}",
                if a { "agree" } else { "DISAGREE" }
            )?;
        }
        if let Some(t) = self.timing_ms {
            writeln!(f, "  {t} ms")?;
        }
        Ok(())
    }
}
