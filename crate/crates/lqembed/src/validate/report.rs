//! Report type shared by all numeric checks.

use serde::{Deserialize, Serialize};

/// Outcome of one numeric cross-check. `pass` always equals
/// max_rel_err <= tolerance; `informational` marks reports whose failure is
/// expected to be possible (best-effort searches, advisory Monte Carlo runs)
/// and must not stop a pipeline.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub test: String,
    pub samples: u64,
    pub max_rel_err: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub seed: u64,
    #[serde(default)]
    pub informational: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<f64>>,
}

impl ValidationReport {
    pub fn measured(
        test: impl Into<String>,
        samples: u64,
        max_rel_err: f64,
        tolerance: f64,
        seed: u64,
    ) -> Self {
        ValidationReport {
            test: test.into(),
            samples,
            max_rel_err,
            tolerance,
            pass: max_rel_err <= tolerance,
            seed,
            informational: false,
            note: None,
            witness: None,
        }
    }

    /// A check that could not run at all; passes vacuously with the reason.
    pub fn skipped(test: impl Into<String>, seed: u64, reason: impl Into<String>) -> Self {
        ValidationReport {
            test: test.into(),
            samples: 0,
            max_rel_err: 0.0,
            tolerance: 0.0,
            pass: true,
            seed,
            informational: true,
            note: Some(format!("skipped: {}", reason.into())),
            witness: None,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn with_witness(mut self, witness: Vec<f64>) -> Self {
        self.witness = Some(witness);
        self
    }

    pub fn mark_informational(mut self) -> Self {
        self.informational = true;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_flag_tracks_the_tolerance() {
        assert!(ValidationReport::measured("t", 1, 1e-4, 1e-3, 0).pass);
        assert!(!ValidationReport::measured("t", 1, 2e-3, 1e-3, 0).pass);
        // Equality counts as passing.
        assert!(ValidationReport::measured("t", 1, 1e-3, 1e-3, 0).pass);
        // The negated convention for must-find-violation checks.
        assert!(ValidationReport::measured("t", 1, -5e-4, -1e-12, 0).pass);
    }

    #[test]
    fn skipped_reports_pass_with_a_reason() {
        let r = ValidationReport::skipped("representation", 7, "no scheme for n=2");
        assert!(r.pass);
        assert!(r.informational);
        assert_eq!(r.note.as_deref(), Some("skipped: no scheme for n=2"));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let r = ValidationReport::measured("representation n=3", 20, 3.25e-7, 1e-3, 42)
            .with_note("200x400 grid")
            .with_witness(vec![0.5, -0.25, 1.0 / 3.0]);
        let json = serde_json::to_string(&r).unwrap();
        let back: ValidationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert_eq!(serde_json::to_string(&back).unwrap(), json);
        // Optional fields stay absent when unset.
        let bare = serde_json::to_string(&ValidationReport::measured("t", 1, 0.0, 1.0, 0)).unwrap();
        assert!(!bare.contains("note"));
        assert!(!bare.contains("witness"));
    }
}
