//! Pass/fail reports with a configuration echo.

use std::fmt::Display;

use crate::rep::RepCase;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub title: String,
    pub passed: bool,
    pub max_residual: f64,
    pub tol: f64,
    pub worst_item: String,
    pub details: Vec<(String, String)>,
    pub config: Vec<(String, String)>,
}

impl Report {
    /// A report that passes iff `max_residual < tol`.
    pub fn new(title: impl Into<String>, max_residual: f64, tol: f64, worst_item: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            passed: max_residual < tol,
            max_residual,
            tol,
            worst_item: worst_item.into(),
            details: Vec::new(),
            config: Vec::new(),
        }
    }

    /// Record a structural violation; the report fails regardless of residuals.
    pub fn violation(&mut self, what: impl Display) {
        self.passed = false;
        self.details.push(("violation".into(), what.to_string()));
    }

    pub fn detail(&mut self, key: impl Into<String>, value: impl Display) {
        self.details.push((key.into(), value.to_string()));
    }

    pub fn echo(&mut self, key: impl Into<String>, value: impl Display) {
        self.config.push((key.into(), value.to_string()));
    }

    pub fn echo_case(&mut self, case: &RepCase) {
        self.echo("case", case.name());
        for (k, v) in case.config_pairs() {
            self.echo(k, v);
        }
    }

    /// Fold another report in: worst residual wins, status is the conjunction.
    pub fn absorb(&mut self, other: &Report) {
        if other.max_residual > self.max_residual {
            self.max_residual = other.max_residual;
            self.worst_item = format!("{}: {}", other.title, other.worst_item);
        }
        self.passed &= other.passed;
        self.details.push((
            other.title.clone(),
            format!(
                "{} max_residual={:e} worst={}",
                status_word(other.passed),
                other.max_residual,
                other.worst_item
            ),
        ));
        for (k, v) in &other.details {
            self.details.push((format!("{}.{k}", other.title), v.clone()));
        }
    }

    /// `key = value` lines.
    pub fn to_kv_text(&self) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: &str| {
            s.push_str(k);
            s.push_str(" = ");
            s.push_str(v);
            s.push('\n');
        };
        line("report", &self.title);
        line("status", status_word(self.passed));
        line("max_residual", &format!("{:e}", self.max_residual));
        line("tol", &format!("{:e}", self.tol));
        line("worst_item", &self.worst_item);
        line("tool_version", TOOL_VERSION);
        for (k, v) in &self.config {
            line(&format!("config.{k}"), v);
        }
        for (k, v) in &self.details {
            line(&format!("detail.{k}"), v);
        }
        s
    }
}

fn status_word(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}
