//! Run reports: one record per check, sorted by name, plus an overall verdict.

use halo_approx::{CheckReport, Distance, Status};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::ScenarioConfig;

pub const TOOL: &str = "halo-approx";

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<Distance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_witness: Option<String>,
    pub runtime_ms: u64,
    pub report: CheckReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub schema: u32,
    pub config: ScenarioConfig,
    pub seed: Option<u64>,
    pub cap: u64,
    pub verdict: Status,
    pub checks: Vec<CheckRecord>,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub extra: Map<String, Value>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.verdict == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    /// The report with every `runtime_ms` zeroed, for comparing runs.
    pub fn without_runtimes(&self) -> RunReport {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.runtime_ms = 0;
        }
        r
    }

    /// A status table, then the full tree of every failing check.
    pub fn to_text(&self) -> String {
        let status = |s: Status| if s == Status::Pass { "PASS" } else { "FAIL" };
        let name = self.config.name.as_deref().unwrap_or(self.config.task.kind().name());
        let mut out = format!("{name} ({} {}), seed {}\n", TOOL, self.version, self.seed.map_or("none".to_string(), |s| s.to_string()));
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(5).max(5);
        out.push_str(&format!("{:6}{:width$}  {:>14}  {:>9}  witness\n", "", "check", "defect", "ms"));
        for c in &self.checks {
            out.push_str(&format!(
                "{:6}{:width$}  {:>14}  {:>9}  {}\n",
                status(c.status),
                c.name,
                c.defect.as_ref().map_or("-".to_string(), |d| d.to_string()),
                c.runtime_ms,
                c.worst_witness.as_deref().unwrap_or("-")
            ));
        }
        for c in self.checks.iter().filter(|c| c.status == Status::Fail) {
            out.push('\n');
            out.push_str(&c.report.to_text());
        }
        out.push_str(&format!("verdict: {}\n", status(self.verdict)));
        out
    }
}
