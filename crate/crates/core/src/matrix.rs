//! The shared matrix substrate: real square matrices with labeled elements.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::numeric::{comp_sum, dot};

/// A real square matrix indexed by an ordered list of distinct element
/// labels, representing a function on ordered pairs of a nonempty finite set.
///
/// Construction enforces the structural invariants (square shape, distinct
/// labels, finite entries); values are immutable afterwards. Operations that
/// combine two matrices require identical label order — there is no implicit
/// reordering.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledSquareMatrix {
    labels: Vec<String>,
    values: Vec<f64>, // row-major, n * n
}

/// Structural error raised when a matrix cannot be formed at all.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    /// The element set must be nonempty.
    Empty,
    /// Value count does not equal `labels² ` (or a row has the wrong length).
    Shape { values: usize, expected: usize },
    /// Labels must be pairwise distinct.
    DuplicateLabel(String),
    /// Every entry must be a finite real.
    NonFinite { row: usize, col: usize },
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::Empty => write!(f, "element set is empty"),
            MatrixError::Shape { values, expected } => {
                write!(
                    f,
                    "expected {expected} values for a square matrix, got {values}"
                )
            }
            MatrixError::DuplicateLabel(l) => write!(f, "duplicate label {l:?}"),
            MatrixError::NonFinite { row, col } => {
                write!(f, "non-finite entry at ({row}, {col})")
            }
        }
    }
}

impl core::error::Error for MatrixError {}

impl LabeledSquareMatrix {
    /// Builds a matrix from row-major values; `values.len()` must equal
    /// `labels.len()²`.
    pub fn new(labels: Vec<String>, values: Vec<f64>) -> Result<Self, MatrixError> {
        if labels.is_empty() {
            return Err(MatrixError::Empty);
        }
        let n = labels.len();
        if values.len() != n * n {
            return Err(MatrixError::Shape {
                values: values.len(),
                expected: n * n,
            });
        }
        let mut seen = BTreeSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(MatrixError::DuplicateLabel(label.clone()));
            }
        }
        for (k, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(MatrixError::NonFinite {
                    row: k / n,
                    col: k % n,
                });
            }
        }
        Ok(Self { labels, values })
    }

    /// Builds a matrix from a list of rows.
    pub fn from_rows(labels: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self, MatrixError> {
        let n = labels.len();
        let mut values = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(MatrixError::Shape {
                    values: rows.iter().map(Vec::len).sum(),
                    expected: n * n,
                });
            }
            values.extend_from_slice(row);
        }
        if rows.len() != n {
            return Err(MatrixError::Shape {
                values: values.len(),
                expected: n * n,
            });
        }
        Self::new(labels, values)
    }

    /// Builds a matrix by evaluating `f` at every index pair.
    pub fn from_fn<F: FnMut(usize, usize) -> f64>(
        labels: Vec<String>,
        mut f: F,
    ) -> Result<Self, MatrixError> {
        let n = labels.len();
        let mut values = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                values.push(f(i, j));
            }
        }
        Self::new(labels, values)
    }

    /// Element count |A|.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Position of `label`, if present.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n() + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.n();
        &self.values[i * n..(i + 1) * n]
    }

    /// Row-major backing slice.
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n()).map(|i| self.get(i, i)).collect()
    }

    /// True when `other` has the same labels in the same order.
    pub fn same_labels(&self, other: &Self) -> bool {
        self.labels == other.labels
    }
}

/// Per-row means and the grand mean (the mean of row means; equal to the
/// full double average by symmetry of use sites).
pub(crate) fn uniform_row_stats(m: &LabeledSquareMatrix) -> (Vec<f64>, f64) {
    let n = m.n() as f64;
    let means: Vec<f64> = (0..m.n())
        .map(|i| comp_sum(m.row(i).iter().copied()) / n)
        .collect();
    let grand = comp_sum(means.iter().copied()) / n;
    (means, grand)
}

/// Per-row weighted averages and the double-weighted grand average
/// `Σ_s Σ_t w(s) w(t) m(s,t)`, computed row-wise.
pub(crate) fn weighted_row_stats(m: &LabeledSquareMatrix, weights: &[f64]) -> (Vec<f64>, f64) {
    let means: Vec<f64> = (0..m.n()).map(|i| dot(weights, m.row(i))).collect();
    let grand = dot(weights, &means);
    (means, grand)
}
