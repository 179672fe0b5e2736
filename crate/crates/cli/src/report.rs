//! Report records and their JSON, CSV and text renderings.

use std::io::Write;

use serde::Serialize;

use crate::CliError;

/// One evaluated check at one point (or the worst point of an aggregate).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub check: String,
    pub name: String,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub z: Option<f64>,
    /// The relation being tested, in words.
    pub expected: String,
    pub value: Option<f64>,
    /// Signed distance to failure: non-negative means the check holds.
    pub margin: Option<f64>,
    pub pass: bool,
    pub detail: Option<String>,
}

impl Record {
    pub fn new(check: impl Into<String>, name: impl Into<String>) -> Self {
        Self {
            check: check.into(),
            name: name.into(),
            x: None,
            y: None,
            z: None,
            expected: String::new(),
            value: None,
            margin: None,
            pass: true,
            detail: None,
        }
    }

    pub fn at_pair(mut self, x: f64, y: f64, z: f64) -> Self {
        self.x = Some(x);
        self.y = Some(y);
        self.z = Some(z);
        self
    }

    pub fn at_z(mut self, z: f64) -> Self {
        self.z = Some(z);
        self
    }

    pub fn relation(mut self, relation: impl Into<String>) -> Self {
        self.expected = relation.into();
        self
    }

    pub fn value(mut self, v: f64) -> Self {
        self.value = Some(v);
        self
    }

    pub fn margin(mut self, m: f64) -> Self {
        self.margin = Some(m);
        self
    }

    pub fn pass(mut self, pass: bool) -> Self {
        self.pass = pass;
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    /// Passes iff `margin >= 0`.
    pub fn judged(self, margin: f64) -> Self {
        let ok = margin >= 0.0;
        self.margin(margin).pass(ok)
    }

    /// A failed record carrying an error message.
    pub fn failed(self, err: impl std::fmt::Display) -> Self {
        self.pass(false).detail(err.to_string())
    }

    fn rounded(&self) -> Self {
        let r = |v: Option<f64>| v.and_then(round_sig);
        Self {
            x: r(self.x),
            y: r(self.y),
            z: r(self.z),
            value: r(self.value),
            margin: r(self.margin),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub timestamp: String,
    pub command: String,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl ReportDocument {
    /// Orders records by check, then name; points keep their input order.
    pub fn new(command: impl Into<String>, mut records: Vec<Record>) -> Self {
        records.sort_by(|a, b| (&a.check, &a.name).cmp(&(&b.check, &b.name)));
        let pass = records.iter().filter(|r| r.pass).count();
        Self {
            tool: "meanlab".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
            command: command.into(),
            summary: Summary {
                total: records.len(),
                pass,
                fail: records.len() - pass,
            },
            records,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    #[default]
    Text,
}

/// Which columns a CSV rendering carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// `check,name,x,y,z,margin,pass`
    Checks,
    /// `check,name,x,y,z,value`, for commands that only evaluate.
    Values,
}

const CHECK_HEADER: [&str; 7] = ["check", "name", "x", "y", "z", "margin", "pass"];
const VALUE_HEADER: [&str; 6] = ["check", "name", "x", "y", "z", "value"];

/// Rounds to 15 significant digits; `None` for non-finite input.
pub fn round_sig(v: f64) -> Option<f64> {
    if !v.is_finite() {
        return None;
    }
    format!("{v:.14e}").parse().ok()
}

/// 15 significant digits, without trailing zeros.
pub fn fmt_sig(v: f64) -> String {
    match round_sig(v) {
        None => v.to_string(),
        Some(0.0) => "0".into(),
        Some(r) if (1e-5..1e15).contains(&r.abs()) => r.to_string(),
        Some(r) => format!("{r:e}"),
    }
}

fn cell(v: Option<f64>) -> String {
    v.map(fmt_sig).unwrap_or_default()
}

pub fn emit_report<W: Write>(
    doc: &ReportDocument,
    format: Format,
    layout: Layout,
    out: &mut W,
) -> Result<(), CliError> {
    match format {
        Format::Json => {
            let rounded = ReportDocument {
                records: doc.records.iter().map(Record::rounded).collect(),
                ..doc.clone()
            };
            serde_json::to_writer_pretty(&mut *out, &rounded)?;
            writeln!(out)?;
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            match layout {
                Layout::Checks => w.write_record(CHECK_HEADER)?,
                Layout::Values => w.write_record(VALUE_HEADER)?,
            }
            for r in &doc.records {
                let mut row = vec![r.check.clone(), r.name.clone(), cell(r.x), cell(r.y), cell(r.z)];
                match layout {
                    Layout::Checks => {
                        row.push(cell(r.margin));
                        row.push(r.pass.to_string());
                    }
                    Layout::Values => row.push(cell(r.value)),
                }
                w.write_record(&row)?;
            }
            w.flush()?;
        }
        Format::Text => write_text(doc, layout, out)?,
    }
    Ok(())
}

fn write_text<W: Write>(doc: &ReportDocument, layout: Layout, out: &mut W) -> std::io::Result<()> {
    for r in &doc.records {
        let mut line = match layout {
            Layout::Checks => format!("{:<4} {} {}", if r.pass { "PASS" } else { "FAIL" }, r.check, r.name),
            Layout::Values => format!("{} {}", r.check, r.name),
        };
        if let (Some(x), Some(y)) = (r.x, r.y) {
            line += &format!(" x={} y={}", fmt_sig(x), fmt_sig(y));
        }
        if let Some(z) = r.z {
            line += &format!(" z={}", fmt_sig(z));
        }
        if let Some(v) = r.value {
            line += &format!(" value={}", fmt_sig(v));
        }
        if let Some(m) = r.margin {
            line += &format!(" margin={}", fmt_sig(m));
        }
        if !r.expected.is_empty() && layout == Layout::Checks {
            line += &format!(" [{}]", r.expected);
        }
        if let Some(d) = &r.detail {
            line += &format!(" ({d})");
        }
        writeln!(out, "{line}")?;
    }
    if layout == Layout::Checks {
        writeln!(
            out,
            "{} checks: {} passed, {} failed",
            doc.summary.total, doc.summary.pass, doc.summary.fail
        )?;
    }
    Ok(())
}
