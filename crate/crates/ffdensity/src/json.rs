//! JSON shapes for CLI output. Exact values are `"num/den"` strings; floats
//! appear only under keys ending in `_approx`.

use ffdensity_core::density::{Comparison, DensityReport, Mode};
use ffdensity_core::rational::to_f64;
use ffdensity_core::BigRational;
use serde_json::{json, Map, Value};

use crate::text::{format_divisor, format_rational};

pub fn rational(r: &BigRational) -> Value {
    Value::String(format_rational(r))
}

pub fn approx(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn mode(m: &Mode) -> Value {
    match m {
        Mode::Exhaustive { cap } => json!({ "kind": "exhaustive", "cap": cap }),
        Mode::Sample { seed, count } => json!({ "kind": "sample", "seed": seed, "samples": count }),
    }
}

/// One object per chain point.
pub fn report_lines(report: &DensityReport, comparison: Option<&Comparison>) -> Vec<Value> {
    report
        .points
        .iter()
        .enumerate()
        .map(|(j, p)| {
            let mut m = Map::new();
            m.insert("chain_index".into(), json!(j));
            m.insert("divisor".into(), json!(format_divisor(&p.divisor)));
            m.insert("deg_D".into(), json!(p.degree));
            m.insert("ell".into(), json!(p.ell));
            m.insert("hits".into(), json!(p.hits));
            m.insert("total".into(), json!(p.total));
            m.insert("ratio".into(), rational(&p.ratio));
            m.insert("ratio_approx".into(), approx(to_f64(&p.ratio)));
            if let Some(se) = p.std_error {
                m.insert("std_error_approx".into(), approx(se));
            }
            m.insert("predicate".into(), json!(report.predicate));
            m.insert("schedule".into(), json!(report.schedule));
            m.insert("mode".into(), mode(&report.mode));
            m.insert(
                "reference".into(),
                report.reference.as_ref().map_or(Value::Null, rational),
            );
            if let Some(c) = comparison {
                m.insert("gap".into(), rational(&c.gaps[j]));
                m.insert("gap_approx".into(), approx(to_f64(&c.gaps[j])));
                m.insert("gaps_eventually_monotone".into(), json!(c.eventually_monotone));
            }
            if let Some(b) = report.truncation_bias {
                m.insert("truncation_bias_approx".into(), approx(b));
            }
            m.insert("notes".into(), json!(report.notes));
            Value::Object(m)
        })
        .collect()
}

/// Renders a flat object as aligned `key  value` lines.
pub fn table(v: &Value) -> String {
    match v {
        Value::Object(m) => {
            let width = m.keys().map(String::len).max().unwrap_or(0);
            m.iter()
                .map(|(k, v)| format!("{k:<width$}  {}", scalar(v)))
                .collect::<Vec<_>>()
                .join("\n")
        }
        other => scalar(other),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(scalar).collect::<Vec<_>>().join(", "),
        other => other.to_string(),
    }
}

/// Rows of chain-point objects as a whitespace-aligned table.
pub fn rows_table(rows: &[Value], columns: &[&str]) -> String {
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            columns
                .iter()
                .map(|c| r.get(*c).map_or(String::new(), scalar))
                .collect()
        })
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].len()).max().unwrap_or(0).max(c.len()))
        .collect();
    let line = |vals: Vec<&str>| {
        vals.iter()
            .zip(&widths)
            .map(|(v, w)| format!("{v:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let mut out = vec![line(columns.to_vec())];
    out.extend(cells.iter().map(|r| line(r.iter().map(String::as_str).collect())));
    out.join("\n")
}
