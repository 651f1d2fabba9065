//! Report rendering: a machine-readable JSON document (stable across
//! runs with the same seed and catalog) and a human-readable markdown
//! summary with a dedicated findings section.

use serde::{Deserialize, Serialize};

use super::verify::{CheckResult, Status};

#[derive(Debug, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub seed: u64,
    pub samples: usize,
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn new(seed: u64, samples: usize, results: Vec<CheckResult>) -> Report {
        Report { version: 1, seed, samples, results }
    }

    pub fn counts(&self) -> (usize, usize, usize, usize) {
        let count = |s: Status| self.results.iter().filter(|r| r.status == s).count();
        (
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Finding),
            count(Status::Skipped),
        )
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable report");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> Result<Report, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let (pass, fail, finding, skipped) = self.counts();
        out.push_str("# Verification report\n\n");
        out.push_str(&format!(
            "{} checks: {pass} PASS, {fail} FAIL, {finding} FINDING, {skipped} SKIPPED \
             (seed {}, {} samples)\n\n",
            self.results.len(),
            self.seed,
            self.samples
        ));
        out.push_str("| case | check | algebra | status | residuals | ms |\n");
        out.push_str("|------|-------|---------|--------|----------:|---:|\n");
        for r in &self.results {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} |\n",
                r.case_id,
                r.check_kind,
                r.algebra.as_deref().unwrap_or("-"),
                r.status,
                r.residuals.len(),
                r.elapsed_ms
            ));
        }
        let findings: Vec<&CheckResult> = self
            .results
            .iter()
            .filter(|r| r.status == Status::Finding)
            .collect();
        if !findings.is_empty() {
            out.push_str("\n## Findings\n\n");
            out.push_str(
                "Each finding is a nonzero residual on data ingested verbatim from the \
                 source tables — a located typo candidate, with the exact residual.\n",
            );
            for r in findings {
                out.push_str(&format!(
                    "\n### case {} / {} / {}\n\n",
                    r.case_id,
                    r.check_kind,
                    r.algebra.as_deref().unwrap_or("-")
                ));
                for note in &r.notes {
                    out.push_str(&format!("- note: {note}\n"));
                }
                for res in &r.residuals {
                    let at = if res.indices.is_empty() {
                        "-".to_string()
                    } else {
                        format!(
                            "({})",
                            res.indices
                                .iter()
                                .map(usize::to_string)
                                .collect::<Vec<_>>()
                                .join(",")
                        )
                    };
                    out.push_str(&format!("- residual at {at}: `{}`\n", res.value));
                }
            }
        }
        let skipped: Vec<&CheckResult> = self
            .results
            .iter()
            .filter(|r| r.status == Status::Skipped)
            .collect();
        if !skipped.is_empty() {
            out.push_str("\n## Skipped\n\n");
            for r in skipped {
                out.push_str(&format!(
                    "- {} ({}): {}\n",
                    r.algebra.as_deref().unwrap_or("-"),
                    r.check_kind,
                    r.notes.join("; ")
                ));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::verify::{CheckKind, Residual};

    fn sample_results() -> Vec<CheckResult> {
        vec![
            CheckResult {
                case_id: "6.1".to_string(),
                algebra: Some("mu9_26".to_string()),
                check_kind: CheckKind::Degeneration,
                status: Status::Pass,
                residuals: Vec::new(),
                notes: Vec::new(),
                elapsed_ms: 12,
            },
            CheckResult {
                case_id: "6.5".to_string(),
                algebra: Some("mu9_18".to_string()),
                check_kind: CheckKind::Degeneration,
                status: Status::Finding,
                residuals: vec![Residual {
                    indices: vec![2, 3, 9],
                    value: "p0^2 - p0^3".to_string(),
                }],
                notes: vec!["unknown constant".to_string()],
                elapsed_ms: 30,
            },
        ]
    }

    #[test]
    fn json_round_trips_and_hides_elapsed() {
        let report = Report::new(7, 3, sample_results());
        let json = report.to_json();
        assert!(!json.contains("elapsed"));
        let back = Report::from_json(&json).unwrap();
        assert_eq!(back.results.len(), 2);
        assert_eq!(back.results[1].residuals[0].indices, vec![2, 3, 9]);
        // A reparsed report renders identically.
        assert_eq!(back.to_json(), json);
    }

    #[test]
    fn markdown_has_table_and_findings_section() {
        let md = Report::new(7, 3, sample_results()).to_markdown();
        assert!(md.contains("| 6.1 | degeneration | mu9_26 | PASS | 0 | 12 |"));
        assert!(md.contains("## Findings"));
        assert!(md.contains("residual at (2,3,9): `p0^2 - p0^3`"));
    }
}
