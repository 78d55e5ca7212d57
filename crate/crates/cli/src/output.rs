use std::io::Write;

use anyhow::Result;
use clap::ValueEnum;
use serde_json::Value;
use ultranev::exactnum::scalar::fmt_scalar;
use ultranev::exactnum::PLFun;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

/// A report as JSON plus an optional table used for CSV output.
pub struct Report {
    pub json: Value,
    pub table: Option<(Vec<String>, Vec<Vec<String>>)>,
}

impl Report {
    pub fn new(json: Value) -> Report {
        Report { json, table: None }
    }
}

pub fn emit(report: &Report, format: Format, out: &mut impl Write) -> Result<()> {
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string(&report.json)?)?,
        Format::Pretty => writeln!(out, "{}", serde_json::to_string_pretty(&report.json)?)?,
        Format::Csv => {
            let (header, rows) = match &report.table {
                Some(t) => t.clone(),
                None => (vec!["path".into(), "value".into()], flatten(&report.json)),
            };
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&header)?;
            for r in rows {
                w.write_record(&r)?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

/// `(path, scalar)` rows for every leaf of a JSON value.
fn flatten(v: &Value) -> Vec<Vec<String>> {
    fn walk(v: &Value, path: String, out: &mut Vec<Vec<String>>) {
        match v {
            Value::Object(m) => {
                for (k, x) in m {
                    let p = if path.is_empty() {
                        k.clone()
                    } else {
                        format!("{path}.{k}")
                    };
                    walk(x, p, out);
                }
            }
            Value::Array(a) => {
                for (i, x) in a.iter().enumerate() {
                    walk(x, format!("{path}[{i}]"), out);
                }
            }
            Value::String(s) => out.push(vec![path, s.clone()]),
            Value::Null => out.push(vec![path, String::new()]),
            other => out.push(vec![path, other.to_string()]),
        }
    }
    let mut out = Vec::new();
    walk(v, String::new(), &mut out);
    out
}

/// Plot rows `(name, t, value, slope)`, one per breakpoint.
pub fn plfun_rows(name: &str, f: &PLFun) -> Vec<Vec<String>> {
    f.segments()
        .iter()
        .map(|s| {
            vec![
                name.to_string(),
                fmt_scalar(&s.breakpoint),
                fmt_scalar(
                    &f.eval(&s.breakpoint)
                        .expect("breakpoints lie in the domain"),
                ),
                fmt_scalar(&s.slope),
            ]
        })
        .collect()
}

pub fn plot_header() -> Vec<String> {
    ["function", "t", "value", "slope"]
        .map(String::from)
        .to_vec()
}
