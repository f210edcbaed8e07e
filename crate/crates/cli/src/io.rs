//! Dense matrix reading and writing in Matrix Market, CSV and JSON.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use nekrasov_core::SquareMatrix;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("matrix is not square ({rows} rows, {cols} columns)")]
    NotSquare { rows: usize, cols: usize },
    #[error("cannot infer format of {0}; pass --format")]
    UnknownFormat(PathBuf),
    #[error(transparent)]
    Matrix(#[from] nekrasov_core::Error),
}

fn parse_err(line: usize, reason: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        reason: reason.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[serde(rename = "mm")]
    MatrixMarket,
    Csv,
    Json,
}

impl Format {
    pub fn from_path(path: &Path) -> Option<Self> {
        match path.extension()?.to_str()?.to_ascii_lowercase().as_str() {
            "mtx" | "mm" => Some(Format::MatrixMarket),
            "csv" => Some(Format::Csv),
            "json" => Some(Format::Json),
            _ => None,
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::MatrixMarket => "mm",
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "mm" | "mtx" => Ok(Format::MatrixMarket),
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format `{s}` (expected mm, csv or json)")),
        }
    }
}

pub fn load_matrix(path: &Path, format: Option<Format>) -> Result<SquareMatrix, IoError> {
    let format = format
        .or_else(|| Format::from_path(path))
        .ok_or_else(|| IoError::UnknownFormat(path.to_path_buf()))?;
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse_matrix(&text, format)
}

pub fn parse_matrix(text: &str, format: Format) -> Result<SquareMatrix, IoError> {
    match format {
        Format::MatrixMarket => parse_matrix_market(text),
        Format::Csv => parse_csv(text),
        Format::Json => parse_json(text),
    }
}

pub fn write_matrix(a: &SquareMatrix, format: Format) -> String {
    match format {
        Format::MatrixMarket => write_matrix_market(a),
        Format::Csv => write_csv(a),
        Format::Json => write_json(a),
    }
}

fn square(rows: Vec<Vec<f64>>) -> Result<SquareMatrix, IoError> {
    let n = rows.len();
    if let Some(bad) = rows.iter().find(|r| r.len() != n) {
        return Err(IoError::NotSquare {
            rows: n,
            cols: bad.len(),
        });
    }
    Ok(SquareMatrix::from_rows(rows)?)
}

fn parse_value(tok: &str, line: usize) -> Result<f64, IoError> {
    let v: f64 = tok
        .parse()
        .map_err(|_| parse_err(line, format!("`{tok}` is not a number")))?;
    if !v.is_finite() {
        return Err(parse_err(line, format!("`{tok}` is not finite")));
    }
    Ok(v)
}

// ---- Matrix Market ----

enum Layout {
    Array,
    Coordinate,
}

fn parse_matrix_market(text: &str) -> Result<SquareMatrix, IoError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, banner) = lines.next().ok_or_else(|| parse_err(1, "empty file"))?;
    let words: Vec<String> = banner.split_whitespace().map(str::to_ascii_lowercase).collect();
    if words.len() != 5 || words[0] != "%%matrixmarket" || words[1] != "matrix" {
        return Err(parse_err(1, "expected `%%MatrixMarket matrix <layout> real general`"));
    }
    let layout = match words[2].as_str() {
        "array" => Layout::Array,
        "coordinate" => Layout::Coordinate,
        other => return Err(parse_err(1, format!("unsupported layout `{other}`"))),
    };
    if words[3] != "real" && words[3] != "integer" {
        return Err(parse_err(1, format!("unsupported field `{}`", words[3])));
    }
    if words[4] != "general" {
        return Err(parse_err(1, format!("unsupported symmetry `{}`", words[4])));
    }

    let mut body = lines.filter(|(_, l)| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });
    let (size_line, size) = body.next().ok_or_else(|| parse_err(2, "missing size line"))?;
    let dims = size
        .split_whitespace()
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| parse_err(size_line, format!("`{t}` is not a size")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let expected = match layout {
        Layout::Array => 2,
        Layout::Coordinate => 3,
    };
    if dims.len() != expected {
        return Err(parse_err(size_line, format!("expected {expected} sizes, found {}", dims.len())));
    }
    let (rows, cols) = (dims[0], dims[1]);
    if rows != cols {
        return Err(IoError::NotSquare { rows, cols });
    }
    let n = rows;
    let mut data = vec![0.0; n * n];
    match layout {
        Layout::Array => {
            let mut count = 0;
            for (line, l) in body {
                for tok in l.split_whitespace() {
                    if count == n * n {
                        return Err(parse_err(line, "more entries than the declared size"));
                    }
                    // column-major
                    let (i, j) = (count % n, count / n);
                    data[i * n + j] = parse_value(tok, line)?;
                    count += 1;
                }
            }
            if count != n * n {
                return Err(parse_err(size_line, format!("expected {} entries, found {count}", n * n)));
            }
        }
        Layout::Coordinate => {
            let nnz = dims[2];
            let mut count = 0;
            for (line, l) in body {
                let toks: Vec<&str> = l.split_whitespace().collect();
                if toks.len() != 3 {
                    return Err(parse_err(line, "expected `row col value`"));
                }
                let index = |t: &str| -> Result<usize, IoError> {
                    match t.parse::<usize>() {
                        Ok(v) if (1..=n).contains(&v) => Ok(v - 1),
                        _ => Err(parse_err(line, format!("index `{t}` out of range 1..={n}"))),
                    }
                };
                let (i, j) = (index(toks[0])?, index(toks[1])?);
                data[i * n + j] = parse_value(toks[2], line)?;
                count += 1;
            }
            if count != nnz {
                return Err(parse_err(size_line, format!("declared {nnz} entries, found {count}")));
            }
        }
    }
    Ok(SquareMatrix::from_row_major(n, data)?)
}

fn write_matrix_market(a: &SquareMatrix) -> String {
    let n = a.n();
    let mut out = format!("%%MatrixMarket matrix array real general\n{n} {n}\n");
    for j in 0..n {
        for i in 0..n {
            out.push_str(&format!("{}\n", a.get(i, j)));
        }
    }
    out
}

// ---- CSV ----

fn parse_csv(text: &str) -> Result<SquareMatrix, IoError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
            parse_err(line, e.to_string())
        })?;
        let line = record.position().map(|p| p.line() as usize).unwrap_or(rows.len() + 1);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .map(|tok| parse_value(tok, line))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(parse_err(1, "no rows"));
    }
    square(rows)
}

fn write_csv(a: &SquareMatrix) -> String {
    let mut out = String::new();
    for row in a.rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

// ---- JSON ----

#[derive(Serialize, Deserialize)]
struct JsonMatrix {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n: Option<usize>,
    rows: Vec<Vec<f64>>,
}

fn parse_json(text: &str) -> Result<SquareMatrix, IoError> {
    let doc: JsonMatrix = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
    if let Some(n) = doc.n {
        if n != doc.rows.len() {
            return Err(IoError::NotSquare {
                rows: doc.rows.len(),
                cols: n,
            });
        }
    }
    if doc.rows.is_empty() {
        return Err(parse_err(1, "no rows"));
    }
    square(doc.rows)
}

fn write_json(a: &SquareMatrix) -> String {
    let doc = JsonMatrix {
        n: Some(a.n()),
        rows: a.rows().map(<[f64]>::to_vec).collect(),
    };
    serde_json::to_string(&doc).expect("finite matrix serializes") + "\n"
}
