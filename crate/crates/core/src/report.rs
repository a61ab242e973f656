use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportEntry {
    pub id: String,
    pub status: Status,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<String>,
    pub millis: u64,
}

impl ReportEntry {
    pub fn pass(id: &str, detail: impl Into<String>) -> Self {
        ReportEntry { id: id.to_string(), status: Status::Pass, detail: detail.into(), counterexample: None, millis: 0 }
    }

    pub fn fail(id: &str, detail: impl Into<String>, counterexample: Option<String>) -> Self {
        ReportEntry { id: id.to_string(), status: Status::Fail, detail: detail.into(), counterexample, millis: 0 }
    }

    pub fn skip(id: &str, detail: impl Into<String>) -> Self {
        ReportEntry { id: id.to_string(), status: Status::Skip, detail: detail.into(), counterexample: None, millis: 0 }
    }

    pub fn from_bool(id: &str, ok: bool, detail: impl Into<String>) -> Self {
        let detail = detail.into();
        if ok {
            Self::pass(id, detail)
        } else {
            Self::fail(id, detail, Some("value reported in detail".into()))
        }
    }

    pub fn is_pass(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub fingerprint: String,
    pub entries: Vec<ReportEntry>,
    pub summary: Summary,
}

impl Report {
    /// Sorts entries by id and tallies the summary.
    pub fn new(fingerprint: String, mut entries: Vec<ReportEntry>) -> Report {
        entries.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary::default();
        for e in &entries {
            match e.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skip => summary.skip += 1,
            }
        }
        Report { version: env!("CARGO_PKG_VERSION").to_string(), fingerprint, entries, summary }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Same report with timings zeroed, for determinism comparisons.
    pub fn without_timing(&self) -> Report {
        let mut r = self.clone();
        for e in &mut r.entries {
            e.millis = 0;
        }
        r
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            let tag = match e.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Skip => "SKIP",
            };
            s.push_str(&format!("{tag} {} ({} ms): {}\n", e.id, e.millis, e.detail));
            if let (Status::Fail, Some(c)) = (e.status, &e.counterexample) {
                s.push_str(&format!("     counterexample: {c}\n"));
            }
        }
        s.push_str(&format!(
            "summary: {} pass, {} fail, {} skip\n",
            self.summary.pass, self.summary.fail, self.summary.skip
        ));
        s
    }
}
