use std::fmt::Write as _;
use std::path::PathBuf;

use qcalab::operator::CellSet;

use crate::error::Outcome;

/// Everything a finished study wants written, collected before any I/O so the
/// emitted bytes depend only on the inputs.
#[derive(Debug, Clone)]
pub struct Report {
    /// The CSV table or plain-text report.
    pub body: String,
    /// Summary lines for stderr.
    pub notes: Vec<String>,
    /// Additional files requested by flags such as `--dump-state`.
    pub files: Vec<(PathBuf, String)>,
    pub outcome: Outcome,
}

impl Report {
    pub fn new(body: String, outcome: Outcome) -> Self {
        Self {
            body,
            notes: Vec::new(),
            files: Vec::new(),
            outcome,
        }
    }

    pub fn note(mut self, line: impl Into<String>) -> Self {
        self.notes.push(line.into());
        self
    }
}

/// 17 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

pub struct Csv {
    out: String,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut out = header.join(",");
        out.push('\n');
        Self { out }
    }

    pub fn row(&mut self, fields: &[String]) {
        self.out.push_str(&fields.join(","));
        self.out.push('\n');
    }

    pub fn finish(self) -> String {
        self.out
    }
}

/// The command-line spelling of a value-enum variant.
pub fn flag_value(v: &impl clap::ValueEnum) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

pub fn cell_set(s: &CellSet) -> String {
    let mut out = String::from("{");
    for (i, c) in s.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{c}");
    }
    out.push('}');
    out
}
