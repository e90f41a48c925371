//! Command output: verdicts, tagged numbers and emitted documents, rendered as
//! text lines or one JSON object.

use std::fmt;

use serde_json::{json, Value};

/// Where a number came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Exact,
    Quadrature { order: usize },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Exact => write!(f, "exact"),
            Provenance::Quadrature { order } => write!(f, "quadrature(order={order})"),
        }
    }
}

#[derive(Debug, Clone)]
enum Line {
    Verdict { name: String, pass: bool },
    Value { name: String, value: String, provenance: Option<Provenance> },
    Note(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Default)]
pub struct Report {
    command: String,
    lines: Vec<Line>,
    document: Option<Value>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), ..Default::default() }
    }

    pub fn verdict(&mut self, name: impl Into<String>, pass: bool) -> &mut Self {
        self.lines.push(Line::Verdict { name: name.into(), pass });
        self
    }

    /// A number or other computed quantity; everything numeric must carry a
    /// provenance.
    pub fn value(&mut self, name: impl Into<String>, value: impl fmt::Display, provenance: Provenance) -> &mut Self {
        self.lines.push(Line::Value { name: name.into(), value: value.to_string(), provenance: Some(provenance) });
        self
    }

    /// A non-numeric fact (names, formulas without coefficients to audit).
    pub fn text(&mut self, name: impl Into<String>, value: impl fmt::Display) -> &mut Self {
        self.lines.push(Line::Value { name: name.into(), value: value.to_string(), provenance: None });
        self
    }

    pub fn note(&mut self, s: impl Into<String>) -> &mut Self {
        self.lines.push(Line::Note(s.into()));
        self
    }

    pub fn document(&mut self, v: Value) -> &mut Self {
        self.document = Some(v);
        self
    }

    /// False as soon as one verdict failed.
    pub fn passed(&self) -> bool {
        self.lines.iter().all(|l| !matches!(l, Line::Verdict { pass: false, .. }))
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = String::new();
                for l in &self.lines {
                    match l {
                        Line::Verdict { name, pass } => {
                            out += &format!("{name}: {}\n", if *pass { "PASS" } else { "FAIL" });
                        }
                        Line::Value { name, value, provenance: Some(p) } => out += &format!("{name}: {value} [{p}]\n"),
                        Line::Value { name, value, provenance: None } => out += &format!("{name}: {value}\n"),
                        Line::Note(s) => out += &format!("{s}\n"),
                    }
                }
                if let Some(d) = &self.document {
                    out += &serde_json::to_string_pretty(d).expect("documents serialize");
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let lines: Vec<Value> = self
                    .lines
                    .iter()
                    .map(|l| match l {
                        Line::Verdict { name, pass } => json!({"name": name, "pass": pass}),
                        Line::Value { name, value, provenance } => match provenance {
                            Some(p) => json!({"name": name, "value": value, "provenance": p.to_string()}),
                            None => json!({"name": name, "value": value}),
                        },
                        Line::Note(s) => json!({"note": s}),
                    })
                    .collect();
                let mut v = json!({"schema": 1, "command": self.command, "pass": self.passed(), "lines": lines});
                if let Some(d) = &self.document {
                    v["document"] = d.clone();
                }
                let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
                s.push('\n');
                s
            }
        }
    }
}
