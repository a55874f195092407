//! Text, CSV and JSON renderings of tables and comparison reports.
//!
//! JSON objects use `serde_json`'s default sorted maps, so key order is
//! fixed; no floating-point values are emitted.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use loday_core::{ComparisonReport, HomologyTable, Verdict};
use serde_json::{json, Map, Value};

use crate::config::Format;

/// What was run, for report headers.
#[derive(Debug, Clone)]
pub struct Header {
    pub command: String,
    pub algebra: String,
    pub coeff: String,
    pub normalized: bool,
}

const EVIDENCE_NOTE: &str = "dimension-level evidence only";

fn dims_json(t: &HomologyTable) -> Value {
    let mut by_degree: BTreeMap<usize, Map<String, Value>> = (0..=t.max_degree).map(|n| (n, Map::new())).collect();
    for (&(n, w), &d) in &t.dims {
        by_degree.entry(n).or_default().insert(w.to_string(), json!(d));
    }
    Value::Object(
        by_degree
            .into_iter()
            .map(|(n, m)| (n.to_string(), Value::Object(m)))
            .collect(),
    )
}

fn totals_json(totals: impl IntoIterator<Item = (usize, usize)>) -> Value {
    Value::Object(totals.into_iter().map(|(n, d)| (n.to_string(), json!(d))).collect())
}

fn verdict_json(v: &Verdict) -> Value {
    match *v {
        Verdict::Agree { through } => json!({ "kind": "agree", "through": through }),
        Verdict::FirstDiscrepancy {
            degree,
            weight,
            left,
            right,
            left_total,
            right_total,
        } => json!({
            "kind": "first-discrepancy",
            "degree": degree,
            "weight": weight,
            "left": left,
            "right": right,
            "left_total": left_total,
            "right_total": right_total,
        }),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values always serialize");
    s.push('\n');
    s
}

fn settings_line(h: &Header, field: &str, bound: Option<u32>, max_weight: u32) -> String {
    let weights = match bound {
        Some(w) => format!("weights <= {}", w.min(max_weight)),
        None => "all weights".to_string(),
    };
    format!(
        "algebra {} over {}, coefficients {}, {}, {}\n",
        h.algebra,
        field,
        h.coeff,
        if h.normalized { "normalized" } else { "unnormalized" },
        weights
    )
}

pub fn render_table(h: &Header, space: &str, t: &HomologyTable, format: Format) -> String {
    match format {
        Format::Json => pretty(&json!({
            "command": h.command,
            "space": space,
            "algebra": h.algebra,
            "field": t.field.to_string(),
            "coeff": h.coeff,
            "normalized": h.normalized,
            "max_degree": t.max_degree,
            "weight_bound": t.weight_bound,
            "max_weight": t.max_weight,
            "dims": dims_json(t),
            "totals": totals_json(t.totals().into_iter().enumerate()),
            "verdict": Value::Null,
        })),
        Format::Csv => {
            let mut s = String::from("degree,weight,dimension\n");
            for (&(n, w), d) in &t.dims {
                let _ = writeln!(s, "{n},{w},{d}");
            }
            s
        }
        Format::Text => {
            let mut s = format!("{} {}\n", h.command, space);
            s.push_str(&settings_line(h, &t.field.to_string(), t.weight_bound, t.max_weight));
            let _ = writeln!(s, "{:>6} {:>6} {:>9}", "degree", "weight", "dimension");
            for (&(n, w), d) in &t.dims {
                let _ = writeln!(s, "{n:>6} {w:>6} {d:>9}");
            }
            let totals: Vec<String> = t.totals().iter().map(usize::to_string).collect();
            let _ = writeln!(s, "totals by degree: {}", totals.join(" "));
            s
        }
    }
}

pub fn render_comparison(h: &Header, r: &ComparisonReport, format: Format) -> String {
    match format {
        Format::Json => {
            let totals = r.totals();
            pretty(&json!({
                "command": h.command,
                "space": { "left": r.left_expr, "right": r.right_expr },
                "algebra": h.algebra,
                "field": r.field.to_string(),
                "coeff": h.coeff,
                "normalized": h.normalized,
                "max_degree": r.max_degree,
                "weight_bound": r.weight_bound,
                "compared_weight": r.compared_weight,
                "dims": { "left": dims_json(&r.left), "right": dims_json(&r.right) },
                "totals": {
                    "left": totals_json(totals.iter().map(|t| (t.0, t.1))),
                    "right": totals_json(totals.iter().map(|t| (t.0, t.2))),
                },
                "verdict": verdict_json(&r.verdict),
                "note": EVIDENCE_NOTE,
            }))
        }
        Format::Csv => {
            let mut s = String::from("degree,weight,left,right\n");
            for (n, w, l, rr) in r.pairs() {
                let _ = writeln!(s, "{n},{w},{l},{rr}");
            }
            s
        }
        Format::Text => {
            let mut s = format!("{} {} vs {}\n", h.command, r.left_expr, r.right_expr);
            s.push_str(&settings_line(
                h,
                &r.field.to_string(),
                r.compared_weight,
                r.compared_weight.unwrap_or(u32::MAX),
            ));
            let _ = writeln!(s, "{:>6} {:>6} {:>6} {:>6}", "degree", "weight", "left", "right");
            for (n, w, l, rr) in r.pairs() {
                let mark = if l != rr { "  *" } else { "" };
                let _ = writeln!(s, "{n:>6} {w:>6} {l:>6} {rr:>6}{mark}");
            }
            s.push_str("totals by degree:\n");
            for (n, l, rr) in r.totals() {
                let _ = writeln!(s, "  {n}: {l} vs {rr}");
            }
            let _ = writeln!(s, "verdict: {} ({EVIDENCE_NOTE})", r.verdict);
            s
        }
    }
}

/// One validation target and what failed on it.
#[derive(Debug, Clone)]
pub struct Check {
    pub target: String,
    pub violations: Vec<String>,
}

pub fn render_validation(checks: &[Check], format: Format) -> String {
    let passed = checks.iter().all(|c| c.violations.is_empty());
    match format {
        Format::Json => pretty(&json!({
            "command": "validate",
            "passed": passed,
            "checks": checks.iter().map(|c| json!({
                "target": c.target,
                "passed": c.violations.is_empty(),
                "violations": c.violations,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut s = String::from("target,passed,violations\n");
            for c in checks {
                let _ = writeln!(
                    s,
                    "\"{}\",{},{}",
                    c.target.replace('"', "\"\""),
                    c.violations.is_empty(),
                    c.violations.len()
                );
            }
            s
        }
        Format::Text => {
            let mut s = String::new();
            for c in checks {
                if c.violations.is_empty() {
                    let _ = writeln!(s, "{}: ok", c.target);
                } else {
                    let _ = writeln!(s, "{}: {} violation(s)", c.target, c.violations.len());
                    for v in &c.violations {
                        let _ = writeln!(s, "  {v}");
                    }
                }
            }
            let _ = writeln!(s, "{}", if passed { "valid" } else { "invalid" });
            s
        }
    }
}
