use std::fmt::Write as _;

use qpoly_core::verify::{Status, VerificationReport};
use serde_json::Value;

use crate::args::Format;
use crate::tables::Table;

pub fn report(r: &VerificationReport, format: Format) -> Result<String, String> {
    match format {
        Format::Json => json(r),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "suite", "status", "params", "lhs", "rhs", "citation", "note"]).map_err(err)?;
            for rec in &r.records {
                let suite = rec.suite.to_string();
                let status = rec.status.to_string();
                w.write_record([
                    rec.id.as_str(),
                    &suite,
                    &status,
                    &rec.params,
                    &rec.lhs,
                    &rec.rhs,
                    &rec.citation,
                    &rec.note,
                ])
                .map_err(err)?;
            }
            finish(w)
        }
        Format::Text => Ok(report_text(r)),
    }
}

fn report_text(r: &VerificationReport) -> String {
    let mut out = String::new();
    let c = &r.context;
    let s = c.s.as_deref().unwrap_or("-");
    let suites: Vec<String> = r.suites.iter().map(ToString::to_string).collect();
    let _ = writeln!(out, "context  s={s} q={} omega={} omega0={}", c.q, c.omega, c.omega0);
    let _ = writeln!(out, "suites   {}", suites.join(", "));
    let _ = writeln!(out, "seed     {}", r.seed);
    let _ = writeln!(
        out,
        "summary  {} checks: {} pass, {} documented-discrepancy, {} fail",
        r.summary.total, r.summary.pass, r.summary.documented_discrepancy, r.summary.fail
    );
    for status in [Status::Fail, Status::DocumentedDiscrepancy] {
        for rec in r.with_status(status) {
            let _ = writeln!(out, "\n{status}  {}", rec.id);
            let _ = writeln!(out, "  params    {}", rec.params);
            let _ = writeln!(out, "  identity  {}", rec.citation);
            let _ = writeln!(out, "  lhs       {}", rec.lhs);
            let _ = writeln!(out, "  rhs       {}", rec.rhs);
            if !rec.note.is_empty() {
                let _ = writeln!(out, "  note      {}", rec.note);
            }
        }
    }
    let _ = writeln!(out, "\n{}", if r.passed() { "PASS" } else { "FAIL" });
    out
}

pub fn table(t: &Table, format: Format) -> Result<String, String> {
    match format {
        Format::Json => json(t),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if let Some(first) = t.rows.first() {
                w.write_record(first.keys()).map_err(err)?;
            }
            for row in &t.rows {
                w.write_record(row.values().map(cell)).map_err(err)?;
            }
            finish(w)
        }
        Format::Text => {
            let c = &t.context;
            let mut out = format!(
                "{} table  s={} q={} omega={} omega0={}\n",
                t.kind,
                c.s.as_deref().unwrap_or("-"),
                c.q,
                c.omega,
                c.omega0
            );
            for row in &t.rows {
                let fields: Vec<String> = row.iter().map(|(k, v)| format!("{k}={}", cell(v))).collect();
                out.push_str(&fields.join("  "));
                out.push('\n');
            }
            Ok(out)
        }
    }
}

/// Scalars as bare strings, arrays space-separated, null empty.
fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn json<T: serde::Serialize>(v: &T) -> Result<String, String> {
    let mut s = serde_json::to_string_pretty(v).map_err(err)?;
    s.push('\n');
    Ok(s)
}

fn finish(w: csv::Writer<Vec<u8>>) -> Result<String, String> {
    let bytes = w.into_inner().map_err(err)?;
    String::from_utf8(bytes).map_err(err)
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn cells() {
        assert_eq!(cell(&json!("1/2")), "1/2");
        assert_eq!(cell(&json!(["1", "-3/2"])), "1 -3/2");
        assert_eq!(cell(&json!(3)), "3");
        assert_eq!(cell(&json!(true)), "true");
        assert_eq!(cell(&Value::Null), "");
    }
}
