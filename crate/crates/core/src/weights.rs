//! Finite averaging functionals.

use alloc::vec::Vec;
use core::fmt;

use crate::DEFAULT_TOL;
use crate::numeric::{abs, comp_sum};

/// A finite linear averaging functional: weights aligned to the element
/// labels of a matrix, summing to 1 so that constant functions map to their
/// value. By default every weight must be nonnegative (monotonicity); a
/// vector built with [`WeightVector::new_signed`] drops that requirement and
/// is flagged accordingly.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    weights: Vec<f64>,
    allow_signed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum WeightError {
    Empty,
    NonFinite {
        index: usize,
    },
    /// A negative weight in a vector that does not allow signed weights.
    Negative {
        index: usize,
        weight: f64,
    },
    /// Weights must sum to 1 (within [`DEFAULT_TOL`]).
    SumNotOne {
        sum: f64,
    },
}

impl fmt::Display for WeightError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightError::Empty => write!(f, "weight vector is empty"),
            WeightError::NonFinite { index } => write!(f, "non-finite weight at index {index}"),
            WeightError::Negative { index, weight } => {
                write!(
                    f,
                    "negative weight {weight} at index {index} (signed weights not allowed)"
                )
            }
            WeightError::SumNotOne { sum } => write!(f, "weights sum to {sum}, expected 1"),
        }
    }
}

impl core::error::Error for WeightError {}

impl WeightVector {
    /// Nonnegative weights summing to 1.
    pub fn new(weights: Vec<f64>) -> Result<Self, WeightError> {
        Self::build(weights, false)
    }

    /// Possibly signed weights summing to 1. Monotonicity of the functional
    /// is lost when a weight is actually negative.
    pub fn new_signed(weights: Vec<f64>) -> Result<Self, WeightError> {
        Self::build(weights, true)
    }

    /// The uniform functional on n elements (weight 1/n each).
    pub fn uniform(n: usize) -> Self {
        assert!(n >= 1, "uniform weights need at least one element");
        Self {
            weights: alloc::vec![1.0 / n as f64; n],
            allow_signed: false,
        }
    }

    fn build(weights: Vec<f64>, allow_signed: bool) -> Result<Self, WeightError> {
        if weights.is_empty() {
            return Err(WeightError::Empty);
        }
        for (i, w) in weights.iter().enumerate() {
            if !w.is_finite() {
                return Err(WeightError::NonFinite { index: i });
            }
            if !allow_signed && *w < 0.0 {
                return Err(WeightError::Negative {
                    index: i,
                    weight: *w,
                });
            }
        }
        let sum = comp_sum(weights.iter().copied());
        if abs(sum - 1.0) > DEFAULT_TOL {
            return Err(WeightError::SumNotOne { sum });
        }
        Ok(Self {
            weights,
            allow_signed,
        })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn get(&self, i: usize) -> f64 {
        self.weights[i]
    }

    /// Whether the vector was constructed with signed weights allowed.
    pub fn allow_signed(&self) -> bool {
        self.allow_signed
    }

    /// True when some weight is actually negative. This, not the
    /// [`allow_signed`](Self::allow_signed) flag, is the monotonicity
    /// boundary used by operations that require a monotone functional.
    pub fn has_negative(&self) -> bool {
        self.weights.iter().any(|w| *w < 0.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn accepts_zero_weights() {
        let w = WeightVector::new(vec![0.5, 0.5, 0.0]).unwrap();
        assert!(!w.has_negative());
        assert!(!w.allow_signed());
    }

    #[test]
    fn rejects_negative_unless_signed() {
        let err = WeightVector::new(vec![1.5, -0.5]).unwrap_err();
        assert_eq!(
            err,
            WeightError::Negative {
                index: 1,
                weight: -0.5
            }
        );
        let w = WeightVector::new_signed(vec![1.5, -0.5]).unwrap();
        assert!(w.has_negative());
        assert!(w.allow_signed());
    }

    #[test]
    fn rejects_bad_sum() {
        assert!(matches!(
            WeightVector::new(vec![0.5, 0.4]),
            Err(WeightError::SumNotOne { .. })
        ));
    }

    #[test]
    fn uniform_sums_to_one() {
        for n in 1..50 {
            let w = WeightVector::uniform(n);
            let sum = w.weights().iter().sum::<f64>();
            assert!((sum - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn signed_flag_without_negatives() {
        let w = WeightVector::new_signed(vec![0.25, 0.75]).unwrap();
        assert!(w.allow_signed());
        assert!(!w.has_negative());
    }
}
