//! File formats: labeled CSV matrices, JSON metadata sidecars, weights
//! files, and edge lists.
//!
//! A matrix file is CSV. If the first cell parses as a number the whole
//! file is a bare n×n block of numbers and labels `x0..` are synthesized;
//! otherwise the first row carries column labels (corner cell ignored) and
//! each data row starts with its label, which must match the column order.
//! Values are written in shortest round-trip decimal form, so write → read
//! reproduces every entry bit for bit.
//!
//! The sidecar `<stem>.meta.json` makes a file self-describing: its kind
//! (`metric` or `sigma`) plus the normalization (`sigma` for uniform,
//! `m` and `weights` for weighted).

use std::fs;
use std::path::{Path, PathBuf};

use proxima_core::LabeledSquareMatrix;
use serde::{Deserialize, Serialize};

use crate::{CliError, usage};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SidecarKind {
    Metric,
    Sigma,
}

/// Metadata that travels next to a matrix CSV.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sidecar {
    pub kind: SidecarKind,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sigma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub weights: Option<Vec<f64>>,
}

impl Sidecar {
    pub fn metric() -> Self {
        Sidecar {
            kind: SidecarKind::Metric,
            sigma: None,
            m: None,
            weights: None,
        }
    }

    pub fn uniform_sigma(sigma: f64) -> Self {
        Sidecar {
            kind: SidecarKind::Sigma,
            sigma: Some(sigma),
            m: None,
            weights: None,
        }
    }

    pub fn weighted_sigma(m: f64, weights: Vec<f64>) -> Self {
        Sidecar {
            kind: SidecarKind::Sigma,
            sigma: None,
            m: Some(m),
            weights: Some(weights),
        }
    }
}

/// `foo.csv` → `foo.meta.json` (any extension is replaced).
pub fn sidecar_path(matrix_path: &Path) -> PathBuf {
    matrix_path.with_extension("meta.json")
}

/// Reads a matrix CSV and, when present, its sidecar.
pub fn read_matrix(path: &Path) -> Result<(LabeledSquareMatrix, Option<Sidecar>), CliError> {
    let matrix = parse_matrix_csv(path)?;
    let sidecar = read_sidecar(&sidecar_path(path))?;
    Ok((matrix, sidecar))
}

fn read_sidecar(path: &Path) -> Result<Option<Sidecar>, CliError> {
    if !path.exists() {
        return Ok(None);
    }
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map(Some)
        .map_err(|e| usage(format!("malformed sidecar {}: {e}", path.display())))
}

fn csv_rows(path: &Path) -> Result<Vec<Vec<String>>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| usage(format!("{}: {e}", path.display())))?;
        rows.push(record.iter().map(str::to_string).collect());
    }
    Ok(rows)
}

fn parse_cell(cell: &str, path: &Path, row: usize, col: usize) -> Result<f64, CliError> {
    cell.parse::<f64>().map_err(|_| {
        usage(format!(
            "{}: row {row}, column {col}: cannot parse {cell:?} as a number",
            path.display()
        ))
    })
}

fn parse_matrix_csv(path: &Path) -> Result<LabeledSquareMatrix, CliError> {
    let rows = csv_rows(path)?;
    let Some(first) = rows.first() else {
        return Err(usage(format!("{}: empty matrix file", path.display())));
    };

    let bare = first
        .first()
        .is_some_and(|cell| cell.parse::<f64>().is_ok());
    let (labels, values) = if bare {
        let n = rows.len();
        let mut values = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(usage(format!(
                    "{}: row {} has {} cells; a bare {n}×{n} matrix needs {n}",
                    path.display(),
                    i + 1,
                    row.len()
                )));
            }
            for (j, cell) in row.iter().enumerate() {
                values.push(parse_cell(cell, path, i + 1, j + 1)?);
            }
        }
        ((0..n).map(|i| format!("x{i}")).collect::<Vec<_>>(), values)
    } else {
        let labels: Vec<String> = first[1..].to_vec();
        let n = labels.len();
        if n == 0 {
            return Err(usage(format!(
                "{}: header row carries no labels",
                path.display()
            )));
        }
        if rows.len() - 1 != n {
            return Err(usage(format!(
                "{}: {} data rows under {n} column labels",
                path.display(),
                rows.len() - 1
            )));
        }
        let mut values = Vec::with_capacity(n * n);
        for (i, row) in rows[1..].iter().enumerate() {
            if row.len() != n + 1 {
                return Err(usage(format!(
                    "{}: row {} has {} cells; a labeled row needs {}",
                    path.display(),
                    i + 2,
                    row.len(),
                    n + 1
                )));
            }
            if row[0] != labels[i] {
                return Err(usage(format!(
                    "{}: row label {:?} does not match column label {:?}",
                    path.display(),
                    row[0],
                    labels[i]
                )));
            }
            for (j, cell) in row[1..].iter().enumerate() {
                values.push(parse_cell(cell, path, i + 2, j + 1)?);
            }
        }
        (labels, values)
    };

    LabeledSquareMatrix::new(labels, values).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Writes the matrix in labeled form plus its sidecar; returns the sidecar
/// path.
pub fn write_matrix(
    path: &Path,
    m: &LabeledSquareMatrix,
    sidecar: &Sidecar,
) -> Result<PathBuf, CliError> {
    let mut writer = csv::Writer::from_path(path)
        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    let io = |e: csv::Error| usage(format!("cannot write {}: {e}", path.display()));

    let mut header = vec![String::new()];
    header.extend(m.labels().iter().cloned());
    writer.write_record(&header).map_err(io)?;
    for i in 0..m.n() {
        let mut record = vec![m.labels()[i].clone()];
        record.extend(m.row(i).iter().map(f64::to_string));
        writer.write_record(&record).map_err(io)?;
    }
    writer
        .flush()
        .map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;

    let sc_path = sidecar_path(path);
    let body = serde_json::to_string_pretty(sidecar).expect("sidecar serializes");
    fs::write(&sc_path, format!("{body}\n"))
        .map_err(|e| usage(format!("cannot write {}: {e}", sc_path.display())))?;
    Ok(sc_path)
}

/// Weights file: one decimal per line, blank lines ignored.
pub fn read_weights(path: &Path) -> Result<Vec<f64>, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let value = line.parse::<f64>().map_err(|_| {
            usage(format!(
                "{}: line {}: cannot parse {line:?} as a number",
                path.display(),
                lineno + 1
            ))
        })?;
        out.push(value);
    }
    if out.is_empty() {
        return Err(usage(format!("{}: no weights found", path.display())));
    }
    Ok(out)
}

/// Edge list CSV: `source,target,weight` per line; one header row is
/// tolerated.
pub fn read_edges(path: &Path) -> Result<Vec<(String, String, f64)>, CliError> {
    let rows = csv_rows(path)?;
    let mut edges = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != 3 {
            return Err(usage(format!(
                "{}: line {}: expected source,target,weight",
                path.display(),
                i + 1
            )));
        }
        match row[2].parse::<f64>() {
            Ok(w) => edges.push((row[0].clone(), row[1].clone(), w)),
            // A non-numeric weight in the first row is a header.
            Err(_) if i == 0 => continue,
            Err(_) => {
                return Err(usage(format!(
                    "{}: line {}: cannot parse weight {:?}",
                    path.display(),
                    i + 1,
                    row[2]
                )));
            }
        }
    }
    if edges.is_empty() {
        return Err(usage(format!("{}: no edges found", path.display())));
    }
    Ok(edges)
}
