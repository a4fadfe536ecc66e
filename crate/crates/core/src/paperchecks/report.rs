//! Margin-based check reports.
//!
//! Every verification criterion is expressed as a named margin that must be
//! nonnegative, so a check passes iff all of its margins are `≥ 0` and a
//! regression in the eigensolver shows up as margin erosion before it flips
//! any boolean.

use serde::Serialize;

#[derive(Debug, Clone, Serialize, PartialEq)]
pub struct Margin {
    pub what: String,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub margins: Vec<Margin>,
    pub samples_used: u64,
    pub seed: u64,
    /// Wall-clock seconds. Excluded from the serialized report so that
    /// identical runs produce byte-identical report files.
    #[serde(skip)]
    pub runtime_seconds: f64,
}

impl CheckReport {
    /// Seal a report; `passed` is derived, never hand-set.
    pub fn from_margins(
        name: impl Into<String>,
        margins: Vec<Margin>,
        samples_used: u64,
        seed: u64,
        runtime_seconds: f64,
    ) -> Self {
        let passed = margins.iter().all(|m| m.value >= 0.0);
        Self {
            name: name.into(),
            passed,
            margins,
            samples_used,
            seed,
            runtime_seconds,
        }
    }

    /// Smallest margin, the first to go negative under regression.
    pub fn min_margin(&self) -> Option<f64> {
        self.margins
            .iter()
            .map(|m| m.value)
            .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.min(v))))
    }

    /// One JSON object, no trailing newline.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serialization is infallible")
    }

    /// Human-readable block for stdout.
    pub fn text_summary(&self) -> String {
        let mut out = format!(
            "[{}] {}  seed={} samples={} runtime={:.2}s\n",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.seed,
            self.samples_used,
            self.runtime_seconds
        );
        for m in &self.margins {
            out.push_str(&format!("    {:>12.3e}  {}\n", m.value, m.what));
        }
        out
    }
}

/// Convenience constructor for margin rows.
pub fn margin(what: impl Into<String>, value: f64) -> Margin {
    Margin {
        what: what.into(),
        value,
    }
}
