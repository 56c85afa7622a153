//! Structured pass/fail records for axiom and identity checks.

use serde::Serialize;
use std::fmt;

/// A concrete counterexample: where two sides of an identity first differ.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Witness {
    /// Basis input (or relation label) where the failure shows.
    pub input: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// An ordered list of named checks, each carrying its first failing witness.
#[derive(Clone, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn new() -> Self {
        AxiomReport::default()
    }

    pub fn push_pass(&mut self, axiom: &str) {
        self.checks.push(AxiomCheck {
            axiom: axiom.to_string(),
            status: Status::Pass,
            witness: None,
        });
    }

    pub fn push_fail(&mut self, axiom: &str, witness: Witness) {
        self.checks.push(AxiomCheck {
            axiom: axiom.to_string(),
            status: Status::Fail,
            witness: Some(witness),
        });
    }

    pub fn push(&mut self, axiom: &str, witness: Option<Witness>) {
        match witness {
            None => self.push_pass(axiom),
            Some(w) => self.push_fail(axiom, w),
        }
    }

    pub fn extend(&mut self, other: AxiomReport) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match (&c.status, &c.witness) {
                (Status::Pass, _) => writeln!(f, "PASS {}", c.axiom)?,
                (Status::Fail, Some(w)) => writeln!(
                    f,
                    "FAIL {} at {}: lhs = {}, rhs = {}",
                    c.axiom, w.input, w.lhs, w.rhs
                )?,
                (Status::Fail, None) => writeln!(f, "FAIL {}", c.axiom)?,
            }
        }
        Ok(())
    }
}
