//! Rendering a [`ProofReport`] as JSON, a markdown table, or grep-able lines.
//!
//! JSON schema (stable; bump `version` on change):
//!
//! ```text
//! {
//!   "steps": [ { "step_id", "description", "computed", "expected", "abs_err",
//!                "tol", "pass", "converged", "n_evals", "notes" }, ... ],
//!   "all_pass": bool,
//!   "config": { "quad": { "abs_tol", "max_subdivisions", "max_evals" }, ... },
//!   "error_model": string,
//!   "timestamp": ISO-8601 string,
//!   "version": string
//! }
//! ```
//!
//! Reals that are not finite are written as `null`.

use std::fmt::Write as _;

use crate::pipeline::ProofReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Markdown,
    /// One `PASS|FAIL step_id computed expected abs_err tol` line per step.
    Plain,
}

pub fn serialize_report(report: &ProofReport, format: ReportFormat) -> Vec<u8> {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_vec_pretty(report).expect("report serializes to JSON");
            out.push(b'\n');
            out
        }
        ReportFormat::Markdown => to_markdown(report).into_bytes(),
        ReportFormat::Plain => to_plain(report, false).into_bytes(),
    }
}

pub fn parse_json_report(bytes: &[u8]) -> Result<ProofReport, serde_json::Error> {
    serde_json::from_slice(bytes)
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "PASS"
    } else {
        "FAIL"
    }
}

/// Plain lines; `with_notes` adds an indented notes line under each step.
pub fn to_plain(report: &ProofReport, with_notes: bool) -> String {
    let mut out = String::new();
    for s in &report.steps {
        let _ = writeln!(
            out,
            "{} {} {:e} {:e} {:e} {:e}",
            verdict(s.pass),
            s.step_id,
            s.computed,
            s.expected,
            s.abs_err,
            s.tol
        );
        if with_notes {
            let _ = writeln!(out, "    {} [{} evals] {}", s.description, s.n_evals, s.notes);
        }
    }
    out
}

fn escape_cell(text: &str) -> String {
    text.replace('|', "\\|").replace('\n', " ")
}

pub fn to_markdown(report: &ProofReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# Proof report\n");
    let _ = writeln!(
        out,
        "Overall: **{}** ({} of {} steps pass), version {}, {}\n",
        verdict(report.all_pass),
        report.steps.iter().filter(|s| s.pass).count(),
        report.steps.len(),
        report.version,
        report.timestamp
    );
    let _ = writeln!(out, "| step | result | computed | expected | abs_err | tol | evals | notes |");
    let _ = writeln!(out, "|---|---|---|---|---|---|---|---|");
    for s in &report.steps {
        let _ = writeln!(
            out,
            "| {} | {} | {:.12e} | {:.12e} | {:.3e} | {:.3e} | {} | {} |",
            s.step_id,
            verdict(s.pass),
            s.computed,
            s.expected,
            s.abs_err,
            s.tol,
            s.n_evals,
            escape_cell(&s.notes)
        );
    }
    let _ = writeln!(out, "\n_{}_", report.error_model);
    out
}
