//! CSV and JSON result files.

use std::io::Write;

use hermsym::matrix::CMatrix;
use serde_json::{Map, Value};
use thiserror::Error;

use crate::config::Format;
use crate::run::Row;

#[derive(Debug, Error)]
pub enum EmitError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("no results to write")]
    Empty,
}

/// Column names, in order.
pub fn columns(n: usize, include_m: bool) -> Vec<String> {
    let mut cols = vec!["k".to_string()];
    let mut matrix_cols = |prefix: &str| {
        for i in 0..n {
            for j in 0..n {
                cols.push(format!("{prefix}_{i}{j}_re"));
                cols.push(format!("{prefix}_{i}{j}_im"));
            }
        }
    };
    matrix_cols("s");
    if include_m {
        matrix_cols("m_plus");
        matrix_cols("m_minus");
    }
    cols.extend(["defect", "rcond", "status"].map(String::from));
    cols
}

/// Numeric cells of a row, `None` where the point failed.
fn numbers(row: &Row, n: usize, include_m: bool) -> Vec<Option<f64>> {
    let mut out = vec![Some(row.k)];
    let mut push_matrix = |m: Option<&CMatrix<f64>>| {
        for i in 0..n {
            for j in 0..n {
                let z = m.map(|m| m[(i, j)]);
                out.push(z.map(|z| z.re));
                out.push(z.map(|z| z.im));
            }
        }
    };
    let r = row.result.as_ref();
    push_matrix(r.map(|r| &r.s));
    if include_m {
        push_matrix(r.map(|r| &r.m_plus));
        push_matrix(r.map(|r| &r.m_minus));
    }
    out.push(r.map(|r| r.unitarity_defect));
    out.push(r.map(|r| r.m_minus_rcond));
    out
}

/// 17 significant digits.
fn csv_float(x: Option<f64>) -> String {
    match x {
        Some(v) => format!("{v:.16e}"),
        None => "nan".to_string(),
    }
}

pub fn write_csv(
    rows: &[Row],
    n: usize,
    include_m: bool,
    out: &mut impl Write,
) -> std::io::Result<()> {
    writeln!(out, "{}", columns(n, include_m).join(","))?;
    for row in rows {
        let mut cells: Vec<String> = numbers(row, n, include_m)
            .into_iter()
            .map(csv_float)
            .collect();
        cells.push(row.status.as_str().to_string());
        writeln!(out, "{}", cells.join(","))?;
    }
    Ok(())
}

/// An array of objects keyed like the CSV columns; failed cells are `null`.
pub fn to_json(rows: &[Row], n: usize, include_m: bool) -> Value {
    let cols = columns(n, include_m);
    let objects = rows
        .iter()
        .map(|row| {
            let mut obj = Map::new();
            for (name, v) in cols.iter().zip(numbers(row, n, include_m)) {
                obj.insert(name.clone(), v.map_or(Value::Null, Value::from));
            }
            obj.insert("status".into(), Value::from(row.status.as_str()));
            Value::Object(obj)
        })
        .collect();
    Value::Array(objects)
}

pub fn write_json(
    rows: &[Row],
    n: usize,
    include_m: bool,
    out: &mut impl Write,
) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, &to_json(rows, n, include_m))?;
    writeln!(out)
}

/// Writes results to `path`, or to standard output when `path` is `None`.
pub fn emit(
    rows: &[Row],
    n: usize,
    include_m: bool,
    format: Format,
    path: Option<&str>,
) -> Result<(), EmitError> {
    if rows.is_empty() {
        return Err(EmitError::Empty);
    }
    let label = path.unwrap_or("<stdout>").to_string();
    let io = |source| EmitError::Io {
        path: label.clone(),
        source,
    };
    let mut buf = Vec::new();
    match format {
        Format::Csv => write_csv(rows, n, include_m, &mut buf),
        Format::Json => write_json(rows, n, include_m, &mut buf),
    }
    .map_err(io)?;
    match path {
        Some(p) => std::fs::write(p, &buf).map_err(io),
        None => std::io::stdout().write_all(&buf).map_err(io),
    }
}
