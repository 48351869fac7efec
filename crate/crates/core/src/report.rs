//! Verification records. A failed record always carries a witness.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One named identity checked on basis tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub citation: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: &str, citation: &str, witness: Option<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            citation: citation.to_string(),
            pass: witness.is_none(),
            witness,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.checks.extend(other.checks);
    }
}

/// Location of an exact nonzero entry of a residual operator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryWitness {
    pub row: usize,
    pub col: usize,
    pub row_level: usize,
    pub col_level: usize,
    pub value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl EntryWitness {
    pub fn note(note: impl Into<String>) -> Self {
        Self {
            row: 0,
            col: 0,
            row_level: 0,
            col_level: 0,
            value: String::new(),
            note: Some(note.into()),
        }
    }
}

impl fmt::Display for EntryWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.value.is_empty() {
            return write!(f, "{}", self.note.as_deref().unwrap_or(""));
        }
        write!(
            f,
            "entry ({}, {}) [level {} <- level {}] = {}",
            self.row, self.col, self.row_level, self.col_level, self.value
        )?;
        if let Some(n) = &self.note {
            write!(f, " ({n})")?;
        }
        Ok(())
    }
}

/// An operator identity checked on a window of Fock levels `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityWindowReport {
    pub id: String,
    pub citation: String,
    pub window: [usize; 2],
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<EntryWitness>,
}

impl IdentityWindowReport {
    pub fn new(
        id: impl Into<String>,
        citation: impl Into<String>,
        window: (usize, usize),
        witness: Option<EntryWitness>,
    ) -> Self {
        Self {
            id: id.into(),
            citation: citation.into(),
            window: [window.0, window.1],
            pass: witness.is_none(),
            witness,
        }
    }
}

impl fmt::Display for IdentityWindowReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {} [{}..{}] {}",
            self.id, self.window[0], self.window[1], self.citation
        )?;
        if let Some(w) = &self.witness {
            write!(f, " -- {w}")?;
        }
        Ok(())
    }
}

pub fn all_pass(reports: &[IdentityWindowReport]) -> bool {
    reports.iter().all(|r| r.pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_checks_keep_witness() {
        let mut r = ValidationReport::new();
        r.push("a", "x = x", None);
        r.push("b", "y = z", Some("y=1, z=2".into()));
        assert!(!r.all_pass());
        assert_eq!(r.failures().count(), 1);
        assert_eq!(r.get("b").unwrap().witness.as_deref(), Some("y=1, z=2"));
    }

    #[test]
    fn window_report_json_shape() {
        let r = IdentityWindowReport::new("id", "A = B", (2, 4), None);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["window"], serde_json::json!([2, 4]));
        assert_eq!(v["pass"], serde_json::json!(true));
        assert!(v.get("witness").is_none());
    }
}
