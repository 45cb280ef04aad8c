use alloc::vec::Vec;

use crate::DEFAULT_TOL;
use crate::matrix::LabeledSquareMatrix;
use crate::validate::{CertificationError, ValidationReport, validate_metric};

/// A labeled square matrix certified to satisfy the metric axioms at a
/// recorded tolerance.
///
/// Certification runs [`validate_metric`] and only succeeds when every
/// gating check passes, so holding a `MetricMatrix` is proof that the
/// validation ran. Operations that consume metrics take this type, not a
/// raw matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricMatrix {
    base: LabeledSquareMatrix,
    certified_tol: f64,
}

impl MetricMatrix {
    /// Validates `base` at `tol` and wraps it on success; on failure returns
    /// the full report inside [`CertificationError::Failed`].
    pub fn certify(base: LabeledSquareMatrix, tol: f64) -> Result<Self, CertificationError> {
        let report = validate_metric(&base, tol);
        if report.passed {
            Ok(MetricMatrix {
                base,
                certified_tol: tol,
            })
        } else {
            Err(CertificationError::Failed(report))
        }
    }

    /// [`Self::certify`] at [`DEFAULT_TOL`].
    pub fn certify_default(base: LabeledSquareMatrix) -> Result<Self, CertificationError> {
        Self::certify(base, DEFAULT_TOL)
    }

    /// Wraps without validating. For inputs that are metrics by
    /// construction; anything else poisons downstream results.
    pub fn new_unchecked(base: LabeledSquareMatrix, tol: f64) -> Self {
        MetricMatrix {
            base,
            certified_tol: tol,
        }
    }

    /// Re-runs validation (e.g. to obtain the report for a matrix certified
    /// earlier).
    pub fn report(&self) -> ValidationReport {
        validate_metric(&self.base, self.certified_tol)
    }

    pub fn matrix(&self) -> &LabeledSquareMatrix {
        &self.base
    }

    pub fn into_matrix(self) -> LabeledSquareMatrix {
        self.base
    }

    /// Tolerance the certification ran at.
    pub fn certified_tol(&self) -> f64 {
        self.certified_tol
    }

    pub fn n(&self) -> usize {
        self.base.n()
    }

    pub fn labels(&self) -> &[alloc::string::String] {
        self.base.labels()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.base.get(i, j)
    }

    pub fn row(&self, i: usize) -> &[f64] {
        self.base.row(i)
    }

    pub fn diagonal(&self) -> Vec<f64> {
        self.base.diagonal()
    }
}
