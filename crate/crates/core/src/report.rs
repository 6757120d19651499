//! Verification report rows shared by the property suites and the CLI.

use serde::Serialize;
use serde_json::{json, Value};

/// What a property row is expected to do.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    /// Residual must be exactly zero.
    Zero,
    /// Residual must be confirmed nonzero (a negative result is a result).
    Nonzero,
    /// Two independently computed values must agree exactly.
    Equal,
    /// Numeric check against a stated tolerance.
    Within,
}

/// One verified property instance.
#[derive(Clone, Debug, Serialize)]
pub struct ReportRow {
    pub suite: String,
    pub property: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub indices: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
    pub expectation: Expectation,
    pub passed: bool,
}

impl ReportRow {
    pub fn new(suite: &str, property: &str, expectation: Expectation, passed: bool) -> Self {
        ReportRow {
            suite: suite.to_string(),
            property: property.to_string(),
            variant: None,
            indices: Vec::new(),
            q: None,
            residual: None,
            expectation,
            passed,
        }
    }

    pub fn with_variant(mut self, variant: &str) -> Self {
        self.variant = Some(variant.to_string());
        self
    }

    pub fn with_indices(mut self, indices: &[i64]) -> Self {
        self.indices = indices.to_vec();
        self
    }

    pub fn with_q(mut self, q: impl ToString) -> Self {
        self.q = Some(q.to_string());
        self
    }

    pub fn with_residual(mut self, residual: impl ToString) -> Self {
        self.residual = Some(residual.to_string());
        self
    }
}

pub fn all_passed(rows: &[ReportRow]) -> bool {
    rows.iter().all(|r| r.passed)
}

/// Order-independent JSON report: rows sorted before serialization so
/// parallel suite assembly stays deterministic.
pub fn rows_to_json(rows: &[ReportRow]) -> Value {
    let mut sorted = rows.to_vec();
    sorted.sort_by(|a, b| {
        (&a.suite, &a.property, &a.variant, &a.indices, &a.q).cmp(&(
            &b.suite,
            &b.property,
            &b.variant,
            &b.indices,
            &b.q,
        ))
    });
    let failed = sorted.iter().filter(|r| !r.passed).count();
    json!({
        "total": sorted.len(),
        "failed": failed,
        "all_passed": failed == 0,
        "rows": serde_json::to_value(&sorted).expect("rows serialize"),
    })
}

pub fn rows_to_csv(rows: &[ReportRow]) -> String {
    let mut sorted = rows.to_vec();
    sorted.sort_by(|a, b| {
        (&a.suite, &a.property, &a.variant, &a.indices, &a.q).cmp(&(
            &b.suite,
            &b.property,
            &b.variant,
            &b.indices,
            &b.q,
        ))
    });
    let mut out = String::from("suite,property,variant,indices,q,residual,expectation,passed\n");
    for r in &sorted {
        let indices = r
            .indices
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!(
            "{},{},{},{},{},{},{:?},{}\n",
            csv_field(&r.suite),
            csv_field(&r.property),
            csv_field(r.variant.as_deref().unwrap_or("")),
            csv_field(&indices),
            csv_field(r.q.as_deref().unwrap_or("")),
            csv_field(r.residual.as_deref().unwrap_or("")),
            r.expectation,
            r.passed
        ));
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_is_sorted_and_counts_failures() {
        let rows = vec![
            ReportRow::new("b", "p2", Expectation::Zero, true),
            ReportRow::new("a", "p1", Expectation::Nonzero, false).with_residual("0"),
        ];
        let v = rows_to_json(&rows);
        assert_eq!(v["total"], 2);
        assert_eq!(v["failed"], 1);
        assert_eq!(v["all_passed"], false);
        assert_eq!(v["rows"][0]["suite"], "a");

        let csv = rows_to_csv(&rows);
        let mut lines = csv.lines();
        assert!(lines.next().unwrap().starts_with("suite,"));
        assert!(lines.next().unwrap().starts_with("a,p1"));
    }
}
