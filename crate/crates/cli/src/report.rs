//! Check and search reports. The text form is rendered from the same value
//! that is serialized as JSON, so both carry the same verdicts.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use prelie_core::laws::{LawId, Residual};
use prelie_core::scalars::{ParamRing, Scalar};
use prelie_core::search::SearchReport;
use prelie_core::Error;
use serde::Serialize;

use crate::file::render_rows;

/// Residual entries listed per law in text output; JSON lists all of them.
pub const TEXT_ENTRY_LIMIT: usize = 10;

pub fn tool_version() -> String {
    format!("prelie-forge {}", env!("CARGO_PKG_VERSION"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Error => "error",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntryReport {
    pub part: String,
    /// 1-based basis indices of the inputs.
    pub input: Vec<usize>,
    /// 1-based output component.
    pub component: Vec<usize>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
}

impl From<&Error> for ErrorReport {
    fn from(e: &Error) -> Self {
        ErrorReport { kind: e.kind().to_string(), message: e.to_string() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LawReport {
    pub law: String,
    pub verdict: Verdict,
    pub evaluated: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub residuals: Vec<EntryReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|i| i + 1).collect()
}

impl LawReport {
    pub fn new(law: LawId, outcome: &Result<Residual, Error>, ring: &ParamRing) -> Self {
        match outcome {
            Ok(res) => {
                let residuals: Vec<EntryReport> = res
                    .entries
                    .iter()
                    .filter(|e| !e.value.is_zero())
                    .map(|e| EntryReport {
                        part: e.part.clone(),
                        input: one_based(&e.input),
                        component: one_based(&e.component),
                        value: e.value.render(ring),
                    })
                    .collect();
                LawReport {
                    law: law.as_str().to_string(),
                    verdict: if residuals.is_empty() { Verdict::Pass } else { Verdict::Fail },
                    evaluated: res.evaluated,
                    residuals,
                    error: None,
                }
            }
            Err(e) => LawReport {
                law: law.as_str().to_string(),
                verdict: Verdict::Error,
                evaluated: 0,
                residuals: Vec::new(),
                error: Some(e.into()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub tool: String,
    pub file: String,
    pub profile: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub bindings: BTreeMap<String, String>,
    pub laws: Vec<LawReport>,
    pub pass: bool,
}

impl CheckReport {
    pub fn verdicts(&self) -> Vec<(String, Verdict)> {
        self.laws.iter().map(|l| (l.law.clone(), l.verdict)).collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.tool);
        let _ = writeln!(out, "file: {}", self.file);
        let _ = writeln!(out, "profile: {}", self.profile);
        for (k, v) in &self.bindings {
            let _ = writeln!(out, "bind: {k} = {v}");
        }
        let width = self.laws.iter().map(|l| l.law.len()).max().unwrap_or(0);
        for l in &self.laws {
            match l.verdict {
                Verdict::Pass => {
                    let _ = writeln!(out, "{:width$}  pass  ({} tuples)", l.law, l.evaluated);
                }
                Verdict::Fail => {
                    let _ = writeln!(
                        out,
                        "{:width$}  fail  ({} nonzero {} over {} tuples)",
                        l.law,
                        l.residuals.len(),
                        if l.residuals.len() == 1 { "entry" } else { "entries" },
                        l.evaluated
                    );
                    for e in l.residuals.iter().take(TEXT_ENTRY_LIMIT) {
                        let _ = writeln!(out, "    {} at {} -> {}: {}", e.part, tuple(&e.input), tuple(&e.component), e.value);
                    }
                    if l.residuals.len() > TEXT_ENTRY_LIMIT {
                        let _ = writeln!(out, "    ... {} more", l.residuals.len() - TEXT_ENTRY_LIMIT);
                    }
                }
                Verdict::Error => {
                    let e = l.error.as_ref().expect("error verdict carries an error");
                    let _ = writeln!(out, "{:width$}  error  [{}] {}", l.law, e.kind, e.message);
                }
            }
        }
        let _ = writeln!(out, "result: {}", if self.pass { "pass" } else { "fail" });
        out
    }
}

fn tuple(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HitReport {
    /// 0-based position in the enumeration order.
    pub index: u128,
    pub value: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchOutput {
    pub tool: String,
    pub file: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub bindings: BTreeMap<String, String>,
    pub unknown: String,
    pub shape: String,
    pub symmetric: bool,
    pub entries: Vec<String>,
    pub laws: Vec<String>,
    pub total: u128,
    pub hits: Vec<HitReport>,
}

impl SearchOutput {
    pub fn new(file: &str, bindings: BTreeMap<String, String>, report: &SearchReport, ring: &ParamRing) -> Self {
        SearchOutput {
            tool: tool_version(),
            file: file.to_string(),
            bindings,
            unknown: report.member.clone(),
            shape: report.shape.as_str().to_string(),
            symmetric: report.symmetric,
            entries: report.entries.iter().map(|q| Scalar::from_rational(q).render(ring)).collect(),
            laws: report.laws.iter().map(|l| l.as_str().to_string()).collect(),
            total: report.total,
            hits: report
                .hits
                .iter()
                .map(|h| HitReport { index: h.index, value: render_rows(ring, &h.value) })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.tool);
        let _ = writeln!(out, "file: {}", self.file);
        for (k, v) in &self.bindings {
            let _ = writeln!(out, "bind: {k} = {v}");
        }
        let _ = writeln!(
            out,
            "unknown: {} ({}{})",
            self.unknown,
            self.shape,
            if self.symmetric { ", symmetric" } else { "" }
        );
        let _ = writeln!(out, "entries: {{{}}}", self.entries.join(", "));
        let _ = writeln!(out, "laws: {}", self.laws.join(", "));
        let _ = writeln!(out, "hits: {} of {} candidates", self.hits.len(), self.total);
        for h in &self.hits {
            let rows: Vec<String> = h.value.iter().map(|r| format!("[{}]", r.join(", "))).collect();
            let _ = writeln!(out, "  #{}: [{}]", h.index, rows.join(", "));
        }
        out
    }
}
