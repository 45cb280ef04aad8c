//! The transforms between metrics and Σ-proximities, and roundtrip checks.
//!
//! Forward direction: row/grand-mean centering of a certified metric,
//!
//! ```text
//! σ(x,y) = d(x,·) + d(y,·) − d(x,y) − d(·,·) + shift
//! ```
//!
//! where the averages are plain row means and the shift is `Σ/n` (uniform
//! normalization), or weighted averages under a [`WeightVector`] and the
//! shift is the target mean `m` (weighted normalization). Backward
//! direction, identical in both cases and local:
//!
//! ```text
//! d(x,y) = ½·(σ(x,x) + σ(y,y)) − σ(x,y)
//! ```
//!
//! For a fixed averaging configuration the two maps are mutually inverse;
//! [`roundtrip_deviation_metric`] and [`roundtrip_deviation_proximity`]
//! measure how far floating point strays from that identity (exact
//! arithmetic would give 0).
//!
//! Images are validated before being returned: the construction guarantees
//! the axioms mathematically, so a rejected image signals numerical trouble
//! worth surfacing, not a modeling error. The `_uncertified` variants skip
//! that O(n³) validation when the caller can afford to trust construction.

use core::fmt;

use crate::matrix::{LabeledSquareMatrix, uniform_row_stats, weighted_row_stats};
use crate::metric::MetricMatrix;
use crate::numeric::max_abs_diff;
use crate::proximity::{Normalization, SigmaProximity};
use crate::validate::{CertificationError, ValidationReport, validate_sigma_proximity_weighted};
use crate::weights::WeightVector;

/// Which average the forward transform uses and which normalization the
/// image carries.
#[derive(Debug, Clone, PartialEq)]
pub enum AveragingConfig {
    /// Plain row means; every row of the image sums to `sigma`.
    Uniform { sigma: f64 },
    /// Weighted row averages; the image's weighted row averages equal
    /// `mean`. With all weights `1/n` and `mean = Σ/n` this coincides with
    /// `Uniform { sigma: Σ }` up to floating-point noise.
    Weighted { mean: f64, weights: WeightVector },
}

impl AveragingConfig {
    pub fn uniform(sigma: f64) -> Self {
        AveragingConfig::Uniform { sigma }
    }

    pub fn weighted(mean: f64, weights: WeightVector) -> Self {
        AveragingConfig::Weighted { mean, weights }
    }

    /// The normalization constant the image will carry (Σ or m).
    pub fn target(&self) -> f64 {
        match self {
            AveragingConfig::Uniform { sigma } => *sigma,
            AveragingConfig::Weighted { mean, .. } => *mean,
        }
    }

    /// The config that reproduces `s`'s recorded normalization — the one
    /// under which a proximity roundtrips to itself.
    pub fn for_proximity(s: &SigmaProximity) -> Self {
        match s.normalization() {
            Normalization::Uniform => AveragingConfig::Uniform { sigma: s.sigma() },
            Normalization::Weighted(w) => AveragingConfig::Weighted {
                mean: s.sigma(),
                weights: w.clone(),
            },
        }
    }

    /// True when this config reproduces `s`'s normalization exactly (same
    /// mode, bit-equal constant, bit-equal weights).
    pub fn matches(&self, s: &SigmaProximity) -> bool {
        match (self, s.normalization()) {
            (AveragingConfig::Uniform { sigma }, Normalization::Uniform) => *sigma == s.sigma(),
            (AveragingConfig::Weighted { mean, weights }, Normalization::Weighted(w)) => {
                *mean == s.sigma() && weights.weights() == w.weights()
            }
            _ => false,
        }
    }

    fn check_len(&self, n: usize) -> Result<(), DualityError> {
        if let AveragingConfig::Weighted { weights, .. } = self {
            if weights.len() != n {
                return Err(DualityError::WeightLength {
                    expected: n,
                    found: weights.len(),
                });
            }
        }
        Ok(())
    }

    fn reject_signed(&self) -> Result<(), DualityError> {
        if let AveragingConfig::Weighted { weights, .. } = self {
            if weights.has_negative() {
                return Err(DualityError::SignedWeights);
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DualityError {
    /// Weight vector length does not match the matrix side.
    WeightLength { expected: usize, found: usize },
    /// The typed transforms require a monotone (nonnegative) averaging
    /// functional; use [`signed_image`] to inspect a signed one.
    SignedWeights,
    /// The computed image failed validation — numerical trouble surfaced
    /// rather than silently wrapped.
    ImageRejected(ValidationReport),
    /// The averaging config does not reproduce the input proximity's
    /// normalization, so the roundtrip identity does not apply.
    ConfigMismatch,
}

impl fmt::Display for DualityError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DualityError::WeightLength { expected, found } => {
                write!(
                    f,
                    "weight vector has length {found}, matrix needs {expected}"
                )
            }
            DualityError::SignedWeights => {
                write!(
                    f,
                    "transform requires nonnegative weights; see signed_image"
                )
            }
            DualityError::ImageRejected(report) => {
                write!(
                    f,
                    "transform image failed {} validation",
                    report.kind.as_str()
                )
            }
            DualityError::ConfigMismatch => {
                write!(
                    f,
                    "averaging config does not match the proximity's normalization"
                )
            }
        }
    }
}

impl core::error::Error for DualityError {}

impl From<CertificationError> for DualityError {
    fn from(e: CertificationError) -> Self {
        match e {
            CertificationError::Failed(report) => DualityError::ImageRejected(report),
            CertificationError::WeightLength { expected, found } => {
                DualityError::WeightLength { expected, found }
            }
            CertificationError::SignedWeights => DualityError::SignedWeights,
        }
    }
}

fn assemble(d: &LabeledSquareMatrix, means: &[f64], grand: f64, shift: f64) -> LabeledSquareMatrix {
    LabeledSquareMatrix::from_fn(d.labels().to_vec(), |x, y| {
        means[x] + means[y] - d.get(x, y) - grand + shift
    })
    .expect("finite inputs keep the image finite")
}

/// The raw forward image, without wrapping or validation.
fn proximity_image(
    d: &MetricMatrix,
    cfg: &AveragingConfig,
) -> Result<LabeledSquareMatrix, DualityError> {
    cfg.check_len(d.n())?;
    Ok(match cfg {
        AveragingConfig::Uniform { sigma } => {
            let (means, grand) = uniform_row_stats(d.matrix());
            assemble(d.matrix(), &means, grand, sigma / d.n() as f64)
        }
        AveragingConfig::Weighted { mean, weights } => {
            let (means, grand) = weighted_row_stats(d.matrix(), weights.weights());
            assemble(d.matrix(), &means, grand, *mean)
        }
    })
}

fn wrap_image(
    matrix: LabeledSquareMatrix,
    cfg: &AveragingConfig,
    tol: f64,
    certify: bool,
) -> Result<SigmaProximity, DualityError> {
    if certify {
        match cfg {
            AveragingConfig::Uniform { sigma } => {
                SigmaProximity::certify(matrix, *sigma, tol).map_err(DualityError::from)
            }
            AveragingConfig::Weighted { mean, weights } => {
                SigmaProximity::certify_weighted(matrix, *mean, weights.clone(), tol)
                    .map_err(DualityError::from)
            }
        }
    } else {
        let normalization = match cfg {
            AveragingConfig::Uniform { .. } => Normalization::Uniform,
            AveragingConfig::Weighted { weights, .. } => Normalization::Weighted(weights.clone()),
        };
        Ok(SigmaProximity::new_unchecked(
            matrix,
            cfg.target(),
            normalization,
            tol,
        ))
    }
}

/// Forward transform: the Σ-proximity image of a certified metric under
/// `cfg`, validated at the metric's certification tolerance before being
/// returned.
///
/// Weighted configs must carry nonnegative weights
/// ([`DualityError::SignedWeights`] otherwise); [`signed_image`] handles the
/// signed case.
pub fn proximity_from_metric(
    d: &MetricMatrix,
    cfg: &AveragingConfig,
) -> Result<SigmaProximity, DualityError> {
    cfg.reject_signed()?;
    let matrix = proximity_image(d, cfg)?;
    wrap_image(matrix, cfg, d.certified_tol(), true)
}

/// [`proximity_from_metric`] without the O(n³) output validation. The
/// construction guarantees the axioms mathematically; use this when that
/// guarantee is enough.
pub fn proximity_from_metric_uncertified(
    d: &MetricMatrix,
    cfg: &AveragingConfig,
) -> Result<SigmaProximity, DualityError> {
    cfg.reject_signed()?;
    let matrix = proximity_image(d, cfg)?;
    wrap_image(matrix, cfg, d.certified_tol(), false)
}

fn metric_image(s: &SigmaProximity) -> LabeledSquareMatrix {
    let diag = s.diagonal();
    LabeledSquareMatrix::from_fn(s.labels().to_vec(), |x, y| {
        0.5 * (diag[x] + diag[y]) - s.get(x, y)
    })
    .expect("finite inputs keep the image finite")
}

/// Backward transform: the metric recovered from a certified Σ-proximity,
/// validated at the proximity's certification tolerance before being
/// returned. The formula is the same for uniform and weighted
/// normalizations and is local: `d(x,y)` reads only `σ(x,x)`, `σ(y,y)` and
/// `σ(x,y)`.
pub fn metric_from_proximity(s: &SigmaProximity) -> Result<MetricMatrix, DualityError> {
    MetricMatrix::certify(metric_image(s), s.certified_tol()).map_err(DualityError::from)
}

/// [`metric_from_proximity`] without the O(n³) output validation.
pub fn metric_from_proximity_uncertified(s: &SigmaProximity) -> MetricMatrix {
    MetricMatrix::new_unchecked(metric_image(s), s.certified_tol())
}

/// Forward image under a possibly signed averaging functional.
///
/// Normalization and both triangle inequalities survive signed weights (the
/// underlying identity is purely algebraic), but egocentrism can degrade or
/// fail, so the result is a bare matrix plus its weighted validation report
/// rather than a certified [`SigmaProximity`].
#[derive(Debug, Clone)]
pub struct SignedImage {
    pub matrix: LabeledSquareMatrix,
    pub report: ValidationReport,
}

/// Computes the weighted forward image of `d` for any weight vector, signed
/// ones included, and reports how it fares against the proximity axioms at
/// the metric's certification tolerance.
pub fn signed_image(
    d: &MetricMatrix,
    mean: f64,
    weights: &WeightVector,
) -> Result<SignedImage, DualityError> {
    if weights.len() != d.n() {
        return Err(DualityError::WeightLength {
            expected: d.n(),
            found: weights.len(),
        });
    }
    let (means, grand) = weighted_row_stats(d.matrix(), weights.weights());
    let matrix = assemble(d.matrix(), &means, grand, mean);
    let report = validate_sigma_proximity_weighted(&matrix, mean, weights, d.certified_tol());
    Ok(SignedImage { matrix, report })
}

/// Max absolute entrywise deviation of the there-and-back image of a metric
/// from the metric itself. Exact arithmetic would return 0.
pub fn roundtrip_deviation_metric(
    d: &MetricMatrix,
    cfg: &AveragingConfig,
) -> Result<f64, DualityError> {
    let s = proximity_from_metric(d, cfg)?;
    let back = metric_from_proximity(&s)?;
    Ok(max_abs_diff(d.matrix().values(), back.matrix().values()))
}

/// Max absolute entrywise deviation of the back-and-there image of a
/// proximity from the proximity itself. `cfg` must reproduce the input's
/// normalization ([`DualityError::ConfigMismatch`] otherwise): the
/// roundtrip is only an identity for a fixed averaging configuration.
pub fn roundtrip_deviation_proximity(
    s: &SigmaProximity,
    cfg: &AveragingConfig,
) -> Result<f64, DualityError> {
    if !cfg.matches(s) {
        return Err(DualityError::ConfigMismatch);
    }
    let d = metric_from_proximity(s)?;
    let back = proximity_from_metric(&d, cfg)?;
    Ok(max_abs_diff(s.matrix().values(), back.matrix().values()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_TOL;
    use crate::validate::{Axiom, CheckOutcome};
    use alloc::string::ToString;
    use alloc::vec;
    use alloc::vec::Vec;

    fn labels(names: &[&str]) -> Vec<alloc::string::String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn three_point_metric() -> MetricMatrix {
        let base = LabeledSquareMatrix::from_rows(
            labels(&["a", "b", "c"]),
            vec![
                vec![0.0, 1.0, 1.0],
                vec![1.0, 0.0, 2.0],
                vec![1.0, 2.0, 0.0],
            ],
        )
        .unwrap();
        MetricMatrix::certify_default(base).unwrap()
    }

    fn fixture_sigma_values() -> [f64; 9] {
        let (p, q, r, s) = (4.0 / 9.0, -2.0 / 9.0, 10.0 / 9.0, -8.0 / 9.0);
        [p, q, q, q, r, s, q, s, r]
    }

    #[test]
    fn one_point_metric_maps_to_its_sigma() {
        let d = MetricMatrix::certify_default(
            LabeledSquareMatrix::new(labels(&["only"]), vec![0.0]).unwrap(),
        )
        .unwrap();
        let s = proximity_from_metric(&d, &AveragingConfig::uniform(5.0)).unwrap();
        assert_eq!(s.matrix().values(), &[5.0]);
        assert_eq!(s.sigma(), 5.0);
    }

    #[test]
    fn one_point_proximity_maps_to_zero_metric() {
        let s = SigmaProximity::certify_default(
            LabeledSquareMatrix::new(labels(&["only"]), vec![7.0]).unwrap(),
            7.0,
        )
        .unwrap();
        let d = metric_from_proximity(&s).unwrap();
        assert_eq!(d.matrix().values(), &[0.0]);
    }

    #[test]
    fn three_point_fixture_matches_hand_values() {
        let d = three_point_metric();
        let s = proximity_from_metric(&d, &AveragingConfig::uniform(0.0)).unwrap();
        let dev = max_abs_diff(s.matrix().values(), &fixture_sigma_values());
        assert!(dev <= 1e-15, "deviation {dev}");
    }

    #[test]
    fn psi_recovers_the_three_point_metric() {
        let d = three_point_metric();
        let s = proximity_from_metric(&d, &AveragingConfig::uniform(0.0)).unwrap();
        let back = metric_from_proximity(&s).unwrap();
        let dev = max_abs_diff(back.matrix().values(), d.matrix().values());
        assert!(dev <= 1e-15, "deviation {dev}");
        assert!((back.get(1, 2) - 2.0).abs() <= 1e-15);
    }

    #[test]
    fn weighted_zero_weight_fixture_is_exact() {
        let d = three_point_metric();
        let w = WeightVector::new(vec![0.5, 0.5, 0.0]).unwrap();
        let s = proximity_from_metric(&d, &AveragingConfig::weighted(0.0, w)).unwrap();
        // All quantities are dyadic rationals, so the arithmetic is exact.
        let expected = [0.5, -0.5, 0.5, -0.5, 0.5, -0.5, 0.5, -0.5, 2.5];
        assert_eq!(s.matrix().values(), &expected);
        // Egocentrism is nonstrict under the zero weight: σ(a,c) = σ(a,a).
        assert_eq!(s.get(0, 2), s.get(0, 0));
        let ego = s.report().check(Axiom::Egocentrism).unwrap().outcome;
        assert_eq!(ego, CheckOutcome::Fail);
    }

    #[test]
    fn weighted_path_with_uniform_weights_matches_uniform_path() {
        let d = three_point_metric();
        let sigma = 2.0;
        let uniform = proximity_from_metric(&d, &AveragingConfig::uniform(sigma)).unwrap();
        let weighted = proximity_from_metric(
            &d,
            &AveragingConfig::weighted(sigma / 3.0, WeightVector::uniform(3)),
        )
        .unwrap();
        let dev = max_abs_diff(uniform.matrix().values(), weighted.matrix().values());
        assert!(dev <= 1e-12, "deviation {dev}");
    }

    #[test]
    fn translation_by_sigma_shift() {
        let d = three_point_metric();
        let s0 = proximity_from_metric(&d, &AveragingConfig::uniform(0.0)).unwrap();
        let s3 = proximity_from_metric(&d, &AveragingConfig::uniform(3.0)).unwrap();
        for (a, b) in s3.matrix().values().iter().zip(s0.matrix().values()) {
            assert!((a - (b + 1.0)).abs() <= 1e-15);
        }
    }

    #[test]
    fn special_sigma_puts_twice_the_mean_on_the_diagonal() {
        let d = three_point_metric();
        let (means, grand) = uniform_row_stats(d.matrix());
        let sigma = 3.0 * grand;
        let s = proximity_from_metric(&d, &AveragingConfig::uniform(sigma)).unwrap();
        for (x, mean) in means.iter().enumerate() {
            assert!((s.get(x, x) - 2.0 * mean).abs() <= 1e-12);
        }
    }

    #[test]
    fn psi_ignores_constant_shifts() {
        let d = three_point_metric();
        let s = proximity_from_metric(&d, &AveragingConfig::uniform(0.0)).unwrap();
        let c = 0.7;
        let shifted = SigmaProximity::certify(
            LabeledSquareMatrix::from_fn(s.labels().to_vec(), |x, y| s.get(x, y) + c).unwrap(),
            3.0 * c,
            DEFAULT_TOL,
        )
        .unwrap();
        let a = metric_from_proximity(&s).unwrap();
        let b = metric_from_proximity(&shifted).unwrap();
        let dev = max_abs_diff(a.matrix().values(), b.matrix().values());
        assert!(dev <= 1e-15, "deviation {dev}");
    }

    #[test]
    fn signed_image_surfaces_the_monotonicity_boundary() {
        let d = MetricMatrix::certify_default(
            LabeledSquareMatrix::from_rows(
                labels(&["a", "b"]),
                vec![vec![0.0, 1.0], vec![1.0, 0.0]],
            )
            .unwrap(),
        )
        .unwrap();
        let w = WeightVector::new_signed(vec![1.5, -0.5]).unwrap();
        let image = signed_image(&d, 0.0, &w).unwrap();
        assert_eq!(image.matrix.values(), &[0.5, 1.5, 1.5, 4.5]);
        // Normalization and both triangle forms hold even with a signed
        // functional; egocentrism fails outright, but it is informational.
        assert!(image.report.passed);
        let ego = image.report.check(Axiom::Egocentrism).unwrap();
        assert_eq!(ego.outcome, CheckOutcome::Fail);
        assert_eq!(ego.margin, Some(-1.0));
        // The certified path refuses the same weights.
        let err = proximity_from_metric(&d, &AveragingConfig::weighted(0.0, w));
        assert!(matches!(err, Err(DualityError::SignedWeights)));
    }

    #[test]
    fn roundtrip_deviations_are_tiny_on_the_fixture() {
        let d = three_point_metric();
        let cfg = AveragingConfig::uniform(0.0);
        let dev = roundtrip_deviation_metric(&d, &cfg).unwrap();
        assert!(dev <= 1e-12, "deviation {dev}");

        let s = proximity_from_metric(&d, &cfg).unwrap();
        let dev = roundtrip_deviation_proximity(&s, &AveragingConfig::for_proximity(&s)).unwrap();
        assert!(dev <= 1e-12, "deviation {dev}");
    }

    #[test]
    fn roundtrip_requires_a_matching_config() {
        let d = three_point_metric();
        let s = proximity_from_metric(&d, &AveragingConfig::uniform(0.0)).unwrap();
        let err = roundtrip_deviation_proximity(&s, &AveragingConfig::uniform(1.0));
        assert!(matches!(err, Err(DualityError::ConfigMismatch)));
        let err = roundtrip_deviation_proximity(
            &s,
            &AveragingConfig::weighted(0.0, WeightVector::uniform(3)),
        );
        assert!(matches!(err, Err(DualityError::ConfigMismatch)));
    }

    #[test]
    fn weight_length_is_checked() {
        let d = three_point_metric();
        let cfg = AveragingConfig::weighted(0.0, WeightVector::uniform(2));
        assert!(matches!(
            proximity_from_metric(&d, &cfg),
            Err(DualityError::WeightLength {
                expected: 3,
                found: 2
            })
        ));
    }

    #[test]
    fn uncertified_variants_skip_validation_only() {
        let d = three_point_metric();
        let cfg = AveragingConfig::uniform(0.0);
        let certified = proximity_from_metric(&d, &cfg).unwrap();
        let raw = proximity_from_metric_uncertified(&d, &cfg).unwrap();
        assert_eq!(certified.matrix(), raw.matrix());
        let back = metric_from_proximity_uncertified(&raw);
        assert_eq!(
            back.matrix(),
            metric_from_proximity(&certified).unwrap().matrix()
        );
    }
}
