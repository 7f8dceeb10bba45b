use serde::Serialize;

use crate::config::RunConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Record {
    pub id: String,
    pub label: String,
    /// Acceptance criterion exercised by the check.
    pub criterion: u8,
    pub status: Status,
    pub expected: String,
    pub observed: String,
    pub ms: u64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub indeterminate: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub config: RunConfig,
    pub checks: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    pub fn new(config: RunConfig, checks: Vec<Record>) -> Self {
        let mut summary = Summary::default();
        for c in &checks {
            match c.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Indeterminate => summary.indeterminate += 1,
            }
        }
        Report { config, checks, summary }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let w = self.checks.iter().map(|c| c.id.chars().count()).max().unwrap_or(2).max(2);
        let mut out = format!("{:<w$}  {:<13}  {}\n", "id", "status", "observed", w = w);
        for c in &self.checks {
            let pad = w - c.id.chars().count();
            out.push_str(&format!("{}{}  {:<13}  {}\n", c.id, " ".repeat(pad), c.status.as_str(), c.observed));
            if c.status != Status::Pass {
                out.push_str(&format!("{}  {:<13}  expected {}\n", " ".repeat(w), "", c.expected));
            }
        }
        let s = self.summary;
        out.push_str(&format!("{} pass, {} fail, {} indeterminate\n", s.pass, s.fail, s.indeterminate));
        out
    }

    /// Records whose criterion is `n`.
    pub fn criterion(&self, n: u8) -> impl Iterator<Item = &Record> {
        self.checks.iter().filter(move |c| c.criterion == n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(id: &str, status: Status) -> Record {
        Record {
            id: id.into(),
            label: "l".into(),
            criterion: 1,
            status,
            expected: "e".into(),
            observed: "o".into(),
            ms: 0,
        }
    }

    #[test]
    fn summary_counts_statuses() {
        let r = Report::new(
            RunConfig::default(),
            vec![rec("a", Status::Pass), rec("b", Status::Fail), rec("c", Status::Pass)],
        );
        assert_eq!(r.summary, Summary { pass: 2, fail: 1, indeterminate: 0 });
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"][1]["status"], "fail");
        assert_eq!(v["summary"]["pass"], 2);
        assert!(r.to_text().contains("expected e"));
    }
}
