//! Command output: an ordered list of check records plus values, notes and
//! citations, rendered as text or JSON.

use std::fmt::Write as _;

use jacobi_core::morphism::{Condition, MorphismReport};
use jacobi_core::{CheckRecord, LocusFinding, StructureReport, ZeroVerdict};
use serde::Serialize;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub check: String,
    pub verdict: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub citations: Vec<String>,
}

impl Record {
    pub fn from_verdict(check: impl Into<String>, v: &ZeroVerdict) -> Self {
        let (verdict, residual, witness, detail) = match v {
            ZeroVerdict::ProvedZero => ("proved_zero", None, None, None),
            ZeroVerdict::NumericallyZero { samples, max_residual } => {
                ("numerically_zero", Some(*max_residual), None, Some(format!("{samples} samples")))
            }
            ZeroVerdict::NonZero { witness, residual } => ("nonzero", Some(*residual), Some(witness.clone()), None),
        };
        Record {
            check: check.into(),
            verdict: verdict.into(),
            passed: v.is_zero(),
            residual,
            witness,
            detail,
            citations: Vec::new(),
        }
    }

    pub fn from_check(c: &CheckRecord) -> Self {
        Record::from_verdict(c.id.clone(), &c.verdict)
    }

    pub fn from_condition(c: &Condition) -> Self {
        Record {
            check: c.id.clone(),
            verdict: if c.holds { "holds" } else { "fails" }.into(),
            passed: c.holds,
            residual: None,
            witness: None,
            detail: Some(c.detail.clone()),
            citations: Vec::new(),
        }
    }

    /// Informational record that never fails the run.
    pub fn from_locus(l: &LocusFinding, citations: &[String]) -> Self {
        let (verdict, residual, witness, detail) = match l {
            LocusFinding::IdenticallyZero => ("identically_zero", None, None, None),
            LocusFinding::Codim1Witness { point, defect, gradient, reduced_gradient } => (
                "codim1_witness",
                Some(*defect),
                Some(point.clone()),
                Some(format!("gradient {gradient:.3e}, reduced gradient {reduced_gradient:.3e}")),
            ),
            LocusFinding::NoSignChange { probes, min_abs, at } => (
                "no_sign_change",
                Some(*min_abs),
                None,
                Some(format!("{probes} probes, min |defect| at {}", point(at))),
            ),
        };
        let cites = if matches!(l, LocusFinding::Codim1Witness { .. }) { citations.to_vec() } else { Vec::new() };
        Record {
            check: "singular_locus".into(),
            verdict: verdict.into(),
            passed: true,
            residual,
            witness,
            detail,
            citations: cites,
        }
    }

    pub fn custom(check: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Record {
            check: check.into(),
            verdict: if passed { "holds" } else { "fails" }.into(),
            passed,
            residual: None,
            witness: None,
            detail: Some(detail.into()),
            citations: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Output {
    pub command: String,
    pub records: Vec<Record>,
    pub values: Vec<(String, String)>,
    pub notes: Vec<String>,
    pub citations: Vec<String>,
    /// Human summary lines, printed last in text mode.
    pub summary: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub emitted: Option<String>,
    pub exit_code: u8,
}

impl Output {
    pub fn new(command: impl Into<String>) -> Self {
        Output { command: command.into(), ..Output::default() }
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }

    pub fn value(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.values.push((key.into(), value.into()));
    }

    pub fn get_value(&self, key: &str) -> Option<&str> {
        self.values.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn record(&self, check: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.check == check)
    }

    pub fn cite(&mut self, c: &str) {
        if !self.citations.iter().any(|x| x == c) {
            self.citations.push(c.into());
        }
    }

    pub fn absorb(&mut self, r: &StructureReport) {
        self.records.extend(r.checks.iter().map(Record::from_check));
        self.records.extend(r.locus.iter().map(|l| Record::from_locus(l, &r.citations)));
        self.values.extend(r.values.iter().cloned());
        self.notes.extend(r.notes.iter().cloned());
        for c in &r.citations {
            self.cite(c);
        }
    }

    pub fn absorb_morphism(&mut self, m: &MorphismReport) {
        self.records.extend(m.preconditions.checks.iter().map(Record::from_check));
        self.records.extend(m.conditions.iter().map(Record::from_condition));
        self.records.extend(m.relations.iter().map(Record::from_check));
        self.notes.extend(m.notes.iter().cloned());
        for c in &m.citations {
            self.cite(c);
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.render_text(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("output serializes");
                s.push('\n');
                s
            }
        }
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        let width = self.records.iter().map(|r| r.check.len()).max().unwrap_or(0);
        for r in &self.records {
            let mark = if r.passed { "PASS" } else { "FAIL" };
            let _ = write!(s, "{mark}  {:<width$}  {}", r.check, r.verdict.replace('_', " "));
            if let Some(res) = r.residual {
                let _ = write!(s, ", residual {res:.3e}");
            }
            if let Some(w) = &r.witness {
                let _ = write!(s, " at {}", point(w));
            }
            if let Some(d) = &r.detail {
                let _ = write!(s, " ({d})");
            }
            s.push('\n');
        }
        for (k, v) in &self.values {
            let _ = writeln!(s, "{k}: {v}");
        }
        for n in &self.notes {
            let _ = writeln!(s, "note: {n}");
        }
        for c in &self.citations {
            let _ = writeln!(s, "cite: {c}");
        }
        for line in &self.summary {
            let _ = writeln!(s, "{line}");
        }
        s
    }
}

pub fn point(p: &[f64]) -> String {
    let parts: Vec<String> = p.iter().map(|x| format!("{x:.6}")).collect();
    format!("({})", parts.join(", "))
}
