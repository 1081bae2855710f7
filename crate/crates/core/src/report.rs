//! Check reports shared by every verifier.

use serde::Serialize;

use crate::rational::Distance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// At most this many violations are kept verbatim; the count is always exact.
pub const MAX_LISTED_VIOLATIONS: usize = 32;

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect: Option<Distance>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub worst_witness: Option<String>,
    pub violation_count: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub approximate: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<CheckReport>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            status: Status::Pass,
            defect: None,
            worst_witness: None,
            violation_count: 0,
            violations: Vec::new(),
            approximate: false,
            notes: Vec::new(),
            children: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn violation(&mut self, msg: impl Into<String>) {
        self.status = Status::Fail;
        self.violation_count += 1;
        if self.violations.len() < MAX_LISTED_VIOLATIONS {
            self.violations.push(msg.into());
        }
    }

    pub fn fail(mut self, msg: impl Into<String>) -> Self {
        self.violation(msg);
        self
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    pub fn with_defect(mut self, d: Distance, witness: Option<String>) -> Self {
        self.defect = Some(d);
        self.worst_witness = witness;
        self
    }

    /// Attaches a sub-report; the parent fails if the child does.
    pub fn push_child(&mut self, child: CheckReport) {
        if !child.passed() {
            self.status = Status::Fail;
        }
        self.approximate |= child.approximate;
        self.children.push(child);
    }

    pub fn all(check: impl Into<String>, children: Vec<CheckReport>) -> Self {
        let mut r = CheckReport::new(check);
        for c in children {
            r.push_child(c);
        }
        r
    }

    pub fn child(&self, name: &str) -> Option<&CheckReport> {
        self.children.iter().find(|c| c.check == name)
    }

    /// One line per report node, indented by depth.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        self.write_text(0, &mut out);
        out
    }

    fn write_text(&self, depth: usize, out: &mut String) {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        out.push_str(&format!("{}{:4} {}", "  ".repeat(depth), status, self.check));
        if let Some(d) = &self.defect {
            out.push_str(&format!("  defect={d}"));
        }
        if let Some(w) = &self.worst_witness {
            out.push_str(&format!("  witness={w}"));
        }
        if self.violation_count > 0 {
            out.push_str(&format!("  violations={}", self.violation_count));
        }
        if self.approximate {
            out.push_str("  (approximate)");
        }
        out.push('\n');
        for v in &self.violations {
            out.push_str(&format!("{}  - {v}\n", "  ".repeat(depth)));
        }
        for c in &self.children {
            c.write_text(depth + 1, out);
        }
    }
}

/// Tracks the worst (largest or smallest) value seen with its witness.
#[derive(Clone, Debug)]
pub struct Extremum {
    largest: bool,
    pub value: Option<Distance>,
    pub witness: Option<String>,
}

impl Extremum {
    pub fn largest() -> Self {
        Extremum { largest: true, value: None, witness: None }
    }

    pub fn smallest() -> Self {
        Extremum { largest: false, value: None, witness: None }
    }

    pub fn offer(&mut self, d: &Distance, witness: impl FnOnce() -> String) {
        let better = match &self.value {
            None => true,
            Some(cur) => {
                let ord = d.total_cmp(cur);
                if self.largest {
                    ord.is_gt()
                } else {
                    ord.is_lt()
                }
            }
        };
        if better {
            self.value = Some(d.clone());
            self.witness = Some(witness());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn child_failure_propagates() {
        let ok = CheckReport::new("a");
        let bad = CheckReport::new("b").fail("broken");
        let r = CheckReport::all("top", vec![ok, bad]);
        assert!(!r.passed());
        assert!(r.to_text().contains("FAIL b"));
    }

    #[test]
    fn extremum_keeps_first_of_ties() {
        let mut e = Extremum::largest();
        e.offer(&Distance::Exact(rat(1, 2)), || "x".into());
        e.offer(&Distance::Exact(rat(1, 2)), || "y".into());
        e.offer(&Distance::Exact(rat(1, 3)), || "z".into());
        assert_eq!(e.witness.as_deref(), Some("x"));
    }
}
