use std::fmt::Write as _;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Refused at the enumeration ceiling.
    NotChecked,
    /// Output that is not a check.
    Info,
}

/// One line of a structured report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Record {
    pub check: String,
    pub object: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub records: Vec<Record>,
}

impl Report {
    pub fn push(&mut self, check: &str, object: impl Into<String>, verdict: Verdict, witness: Option<String>) {
        self.records.push(Record {
            check: check.to_string(),
            object: object.into(),
            verdict,
            witness,
        });
    }

    pub fn pass(&mut self, check: &str, object: impl Into<String>) {
        self.push(check, object, Verdict::Pass, None);
    }

    pub fn fail(&mut self, check: &str, object: impl Into<String>, witness: String) {
        self.push(check, object, Verdict::Fail, Some(witness));
    }

    pub fn verdict(&mut self, check: &str, object: impl Into<String>, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.pass(check, object);
        } else {
            self.fail(check, object, witness());
        }
    }

    pub fn info(&mut self, check: &str, object: impl Into<String>, text: String) {
        self.push(check, object, Verdict::Info, Some(text));
    }

    /// 1 when some check failed, 3 when one was refused, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.records.iter().any(|r| r.verdict == Verdict::Fail) {
            1
        } else if self.records.iter().any(|r| r.verdict == Verdict::NotChecked) {
            3
        } else {
            0
        }
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for r in &self.records {
            match format {
                Format::Records => {
                    out += &serde_json::to_string(r).expect("records serialize");
                    out.push('\n');
                }
                Format::Text => match r.verdict {
                    Verdict::Info => {
                        let text = r.witness.as_deref().unwrap_or_default();
                        out += text;
                        if !text.ends_with('\n') {
                            out.push('\n');
                        }
                    }
                    v => {
                        let label = match v {
                            Verdict::Pass => "pass",
                            Verdict::Fail => "FAIL",
                            _ => "not checked",
                        };
                        let _ = writeln!(out, "{} {}: {label}", r.check, r.object);
                        if let Some(w) = &r.witness {
                            let _ = writeln!(out, "  witness: {w}");
                        }
                    }
                },
            }
        }
        out
    }
}
