//! Machine-readable results of checker runs.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// Name plus parameters of a bundled system.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceDescriptor {
    pub name: String,
    pub params: BTreeMap<String, Value>,
}

/// What backs a verdict.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    /// A concrete object (chain, pair, certificate, counterexample).
    Witness(Value),
    /// Every case of a finite enumeration was checked.
    ExhaustivePass { checked: u64, detail: Value },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub passed: bool,
    pub evidence: Evidence,
}

impl Check {
    pub fn witness(
        id: impl Into<String>,
        description: impl Into<String>,
        passed: bool,
        witness: Value,
    ) -> Self {
        Self {
            id: id.into(),
            description: description.into(),
            passed,
            evidence: Evidence::Witness(witness),
        }
    }

    pub fn exhaustive(
        id: impl Into<String>,
        description: impl Into<String>,
        passed: bool,
        checked: u64,
        detail: Value,
    ) -> Self {
        Self {
            id: id.into(),
            description: description.into(),
            passed,
            evidence: Evidence::ExhaustivePass { checked, detail },
        }
    }
}

/// Verdicts, witnesses and data rows of one run. Contains nothing time dependent.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub suite: String,
    pub instance: Option<InstanceDescriptor>,
    pub parameters: Value,
    pub checks: Vec<Check>,
    pub rows: Vec<Value>,
    /// Some enumeration hit its budget; results are incomplete.
    pub partial: bool,
    pub notes: Vec<String>,
}

impl AnalysisReport {
    pub fn new(suite: impl Into<String>) -> Self {
        Self {
            suite: suite.into(),
            instance: None,
            parameters: Value::Object(Default::default()),
            checks: Vec::new(),
            rows: Vec::new(),
            partial: false,
            notes: Vec::new(),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// Markdown table of checks followed by the data rows.
    pub fn to_markdown(&self) -> String {
        let mut s = format!("# {}\n\n", self.suite);
        if let Some(inst) = &self.instance {
            let _ = writeln!(
                s,
                "instance: `{}` {}\n",
                inst.name,
                serde_json::to_string(&inst.params).unwrap()
            );
        }
        if self.partial {
            s.push_str("**partial report: a budget was exceeded**\n\n");
        }
        if !self.checks.is_empty() {
            s.push_str("| check | result | description |\n|---|---|---|\n");
            for c in &self.checks {
                let _ = writeln!(
                    s,
                    "| {} | {} | {} |",
                    c.id,
                    if c.passed { "pass" } else { "FAIL" },
                    c.description
                );
            }
            s.push('\n');
        }
        let keys: Vec<&String> = self
            .rows
            .iter()
            .filter_map(Value::as_object)
            .flat_map(|r| r.keys())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        if !keys.is_empty() {
            let _ = writeln!(
                s,
                "| {} |",
                keys.iter()
                    .map(|k| k.as_str())
                    .collect::<Vec<_>>()
                    .join(" | ")
            );
            let _ = writeln!(s, "|{}", "---|".repeat(keys.len()));
            for row in &self.rows {
                let cells: Vec<String> = keys
                    .iter()
                    .map(|k| match row.get(k.as_str()) {
                        Some(Value::String(v)) => v.clone(),
                        Some(v) => v.to_string(),
                        None => String::new(),
                    })
                    .collect();
                let _ = writeln!(s, "| {} |", cells.join(" | "));
            }
            s.push('\n');
        }
        for n in &self.notes {
            let _ = writeln!(s, "- {n}");
        }
        s
    }
}

/// A report plus the wall time of the run, kept outside the deterministic payload.
#[derive(Clone, Debug, Serialize)]
pub struct Envelope {
    pub report: AnalysisReport,
    pub wall_time_ms: u128,
}
