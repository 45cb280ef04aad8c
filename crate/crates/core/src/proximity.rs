use alloc::vec::Vec;

use crate::DEFAULT_TOL;
use crate::matrix::LabeledSquareMatrix;
use crate::validate::{
    CertificationError, ValidationReport, validate_sigma_proximity,
    validate_sigma_proximity_weighted,
};
use crate::weights::WeightVector;

/// Which averaging functional a proximity is normalized under.
#[derive(Debug, Clone, PartialEq)]
pub enum Normalization {
    /// Plain row sums: each row sums to the stated value.
    Uniform,
    /// Weighted row averages: `Σ_y w(y)·σ(x,y)` equals the stated value for
    /// every `x`.
    Weighted(WeightVector),
}

impl Normalization {
    pub fn is_uniform(&self) -> bool {
        matches!(self, Normalization::Uniform)
    }

    pub fn weights(&self) -> Option<&WeightVector> {
        match self {
            Normalization::Uniform => None,
            Normalization::Weighted(w) => Some(w),
        }
    }
}

/// A labeled square matrix certified to satisfy the Σ-proximity axioms at a
/// recorded tolerance, under a recorded normalization.
///
/// `sigma` is the normalization constant: the common row sum in the uniform
/// case, the common weighted row average in the weighted case.
#[derive(Debug, Clone, PartialEq)]
pub struct SigmaProximity {
    base: LabeledSquareMatrix,
    sigma: f64,
    normalization: Normalization,
    certified_tol: f64,
}

impl SigmaProximity {
    /// Validates `base` as a row-sum-normalized proximity at `tol` and wraps
    /// it on success.
    pub fn certify(
        base: LabeledSquareMatrix,
        sigma: f64,
        tol: f64,
    ) -> Result<Self, CertificationError> {
        let report = validate_sigma_proximity(&base, sigma, tol);
        if report.passed {
            Ok(SigmaProximity {
                base,
                sigma,
                normalization: Normalization::Uniform,
                certified_tol: tol,
            })
        } else {
            Err(CertificationError::Failed(report))
        }
    }

    /// [`Self::certify`] at [`DEFAULT_TOL`].
    pub fn certify_default(
        base: LabeledSquareMatrix,
        sigma: f64,
    ) -> Result<Self, CertificationError> {
        Self::certify(base, sigma, DEFAULT_TOL)
    }

    /// Validates `base` as a proximity normalized under `weights` (weighted
    /// row averages equal to `mean`) and wraps it on success.
    ///
    /// The weights must be nonnegative: the triangle axioms only carry their
    /// usual meaning under a monotone averaging functional, so a vector with
    /// a negative weight is rejected with [`CertificationError::SignedWeights`]
    /// before any validation runs. Use
    /// [`validate_sigma_proximity_weighted`] directly to inspect a matrix
    /// against signed weights without certifying it.
    pub fn certify_weighted(
        base: LabeledSquareMatrix,
        mean: f64,
        weights: WeightVector,
        tol: f64,
    ) -> Result<Self, CertificationError> {
        if weights.len() != base.n() {
            return Err(CertificationError::WeightLength {
                expected: base.n(),
                found: weights.len(),
            });
        }
        if weights.has_negative() {
            return Err(CertificationError::SignedWeights);
        }
        let report = validate_sigma_proximity_weighted(&base, mean, &weights, tol);
        if report.passed {
            Ok(SigmaProximity {
                base,
                sigma: mean,
                normalization: Normalization::Weighted(weights),
                certified_tol: tol,
            })
        } else {
            Err(CertificationError::Failed(report))
        }
    }

    /// Wraps without validating. For matrices that are proximities by
    /// construction.
    pub fn new_unchecked(
        base: LabeledSquareMatrix,
        sigma: f64,
        normalization: Normalization,
        tol: f64,
    ) -> Self {
        SigmaProximity {
            base,
            sigma,
            normalization,
            certified_tol: tol,
        }
    }

    /// Re-runs validation under the recorded normalization.
    pub fn report(&self) -> ValidationReport {
        match &self.normalization {
            Normalization::Uniform => {
                validate_sigma_proximity(&self.base, self.sigma, self.certified_tol)
            }
            Normalization::Weighted(w) => {
                validate_sigma_proximity_weighted(&self.base, self.sigma, w, self.certified_tol)
            }
        }
    }

    pub fn matrix(&self) -> &LabeledSquareMatrix {
        &self.base
    }

    pub fn into_matrix(self) -> LabeledSquareMatrix {
        self.base
    }

    /// The normalization constant (common row sum, or common weighted row
    /// average).
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn normalization(&self) -> &Normalization {
        &self.normalization
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

    /// The self-proximity column σ(x,x), the raw material for centrality.
    pub fn diagonal(&self) -> Vec<f64> {
        self.base.diagonal()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn labels(names: &[&str]) -> Vec<alloc::string::String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn certify_accepts_a_two_point_proximity() {
        // Image of d(a,b) = 0.2 at Σ = 1.
        let base = LabeledSquareMatrix::from_rows(
            labels(&["a", "b"]),
            vec![vec![0.6, 0.4], vec![0.4, 0.6]],
        )
        .unwrap();
        let p = SigmaProximity::certify_default(base, 1.0).unwrap();
        assert_eq!(p.sigma(), 1.0);
        assert!(p.normalization().is_uniform());
        assert_eq!(p.diagonal(), vec![0.6, 0.6]);
    }

    #[test]
    fn certify_rejects_wrong_sigma() {
        let base = LabeledSquareMatrix::from_rows(
            labels(&["a", "b"]),
            vec![vec![0.6, 0.4], vec![0.4, 0.6]],
        )
        .unwrap();
        assert!(matches!(
            SigmaProximity::certify_default(base, 0.0),
            Err(CertificationError::Failed(_))
        ));
    }

    #[test]
    fn weighted_certification_rejects_signed_weights() {
        let base = LabeledSquareMatrix::from_rows(
            labels(&["a", "b"]),
            vec![vec![0.6, 0.4], vec![0.4, 0.6]],
        )
        .unwrap();
        let signed = WeightVector::new_signed(vec![1.5, -0.5]).unwrap();
        assert!(matches!(
            SigmaProximity::certify_weighted(base, 1.0, signed, DEFAULT_TOL),
            Err(CertificationError::SignedWeights)
        ));
    }

    #[test]
    fn weighted_certification_checks_length() {
        let base = LabeledSquareMatrix::from_rows(
            labels(&["a", "b"]),
            vec![vec![0.6, 0.4], vec![0.4, 0.6]],
        )
        .unwrap();
        let w = WeightVector::uniform(3);
        assert!(matches!(
            SigmaProximity::certify_weighted(base, 1.0, w, DEFAULT_TOL),
            Err(CertificationError::WeightLength {
                expected: 2,
                found: 3
            })
        ));
    }

    #[test]
    fn weighted_certification_accepts_zero_weight_instance() {
        // Weighted image of the three-point metric (d(a,b)=d(a,c)=1,
        // d(b,c)=2) under weights (1/2, 1/2, 0) at mean 0; egocentrism is
        // only nonstrict here (σ(a,c) = σ(a,a)) but does not gate.
        let base = LabeledSquareMatrix::from_rows(
            labels(&["a", "b", "c"]),
            vec![
                vec![0.5, -0.5, 0.5],
                vec![-0.5, 0.5, -0.5],
                vec![0.5, -0.5, 2.5],
            ],
        )
        .unwrap();
        let w = WeightVector::new(vec![0.5, 0.5, 0.0]).unwrap();
        let p = SigmaProximity::certify_weighted(base, 0.0, w, DEFAULT_TOL).unwrap();
        assert_eq!(p.sigma(), 0.0);
        assert!(!p.normalization().is_uniform());
    }
}
