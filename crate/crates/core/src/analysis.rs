//! Centrality from proximity diagonals, mean-distance statistics and the
//! lower bound on them, the doubly-stochastic subclass, and closure of the
//! two families under combinations.
//!
//! The diagonal σ(x,x) measures how peripheral an element is: central
//! elements have small self-proximity. For a metric source the diagonal
//! follows from the diagonal law `σ(x,x) = 2·d(x,·) − d(·,·) + shift`
//! without materializing the full transform; for a proximity source it is
//! read off directly.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::DEFAULT_TOL;
use crate::duality::AveragingConfig;
use crate::matrix::{LabeledSquareMatrix, uniform_row_stats, weighted_row_stats};
use crate::metric::MetricMatrix;
use crate::numeric::{abs, comp_sum};
use crate::proximity::{Normalization, SigmaProximity};
use crate::validate::CertificationError;
use crate::weights::WeightVector;

#[derive(Debug, Clone, PartialEq)]
pub enum AnalysisError {
    NoItems,
    CoefficientCount {
        items: usize,
        coeffs: usize,
    },
    NonFiniteCoefficient {
        index: usize,
    },
    /// Convex combinations need nonnegative coefficients.
    NegativeCoefficient {
        index: usize,
        value: f64,
    },
    /// Cone combinations need strictly positive coefficients.
    NonPositiveCoefficient {
        index: usize,
        value: f64,
    },
    /// Convex coefficients must sum to 1 (within [`DEFAULT_TOL`]).
    CoefficientSum {
        sum: f64,
    },
    LabelMismatch,
    SigmaMismatch {
        expected: f64,
        found: f64,
    },
    /// Cone combinations of proximities are only closed at Σ = 0.
    SigmaNotZero {
        index: usize,
        sigma: f64,
    },
    /// Items carry different normalizations (or different weight vectors).
    NormalizationMismatch,
    WeightLength {
        expected: usize,
        found: usize,
    },
    /// Mean-distance statistics feed the lower bound, whose proof needs a
    /// monotone functional; negative weights are rejected.
    SignedWeights,
    /// A combination failed to re-certify — numerical trouble surfaced.
    Certification(CertificationError),
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::NoItems => write!(f, "no items to combine"),
            AnalysisError::CoefficientCount { items, coeffs } => {
                write!(f, "{items} items but {coeffs} coefficients")
            }
            AnalysisError::NonFiniteCoefficient { index } => {
                write!(f, "non-finite coefficient at index {index}")
            }
            AnalysisError::NegativeCoefficient { index, value } => {
                write!(f, "negative coefficient {value} at index {index}")
            }
            AnalysisError::NonPositiveCoefficient { index, value } => {
                write!(f, "nonpositive coefficient {value} at index {index}")
            }
            AnalysisError::CoefficientSum { sum } => {
                write!(f, "coefficients sum to {sum}, expected 1")
            }
            AnalysisError::LabelMismatch => write!(f, "items have different labels"),
            AnalysisError::SigmaMismatch { expected, found } => {
                write!(f, "normalization constants differ: {expected} vs {found}")
            }
            AnalysisError::SigmaNotZero { index, sigma } => {
                write!(
                    f,
                    "item {index} has Σ = {sigma}, cone combination needs Σ = 0"
                )
            }
            AnalysisError::NormalizationMismatch => {
                write!(f, "items have different normalizations")
            }
            AnalysisError::WeightLength { expected, found } => {
                write!(
                    f,
                    "weight vector has length {found}, matrix needs {expected}"
                )
            }
            AnalysisError::SignedWeights => {
                write!(f, "operation requires nonnegative weights")
            }
            AnalysisError::Certification(e) => write!(f, "combination rejected: {e}"),
        }
    }
}

impl core::error::Error for AnalysisError {}

fn checked_weights<'a>(
    d: &MetricMatrix,
    weights: Option<&'a WeightVector>,
) -> Result<Option<&'a WeightVector>, AnalysisError> {
    if let Some(w) = weights {
        if w.len() != d.n() {
            return Err(AnalysisError::WeightLength {
                expected: d.n(),
                found: w.len(),
            });
        }
        if w.has_negative() {
            return Err(AnalysisError::SignedWeights);
        }
    }
    Ok(weights)
}

/// Per-element mean distances `d(x,·)` and the grand mean `d(·,·)`, plain or
/// weighted. Negative weights are rejected: these statistics feed
/// [`mean_distance_bound`], whose proof requires monotonicity.
pub fn mean_distances(
    d: &MetricMatrix,
    weights: Option<&WeightVector>,
) -> Result<(Vec<f64>, f64), AnalysisError> {
    Ok(match checked_weights(d, weights)? {
        None => uniform_row_stats(d.matrix()),
        Some(w) => weighted_row_stats(d.matrix(), w.weights()),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentralityEntry {
    pub index: usize,
    pub label: String,
    /// Self-proximity σ(x,x) — the provinciality score.
    pub diagonal: f64,
    /// Mean distance d(x,·) under the report's averaging.
    pub mean_distance: f64,
    /// d(x,·) / d(·,·); absent when d(·,·) is not positive (n = 1, or a
    /// degenerate weighting).
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CentralityReport {
    /// One entry per element, in label order.
    pub entries: Vec<CentralityEntry>,
    /// Element indices sorted ascending by diagonal (most central first);
    /// ties keep label order.
    pub ranking: Vec<usize>,
    /// Grand mean distance d(·,·).
    pub grand_mean_distance: f64,
    /// The normalization constant (Σ or m) the diagonals correspond to.
    pub sigma: f64,
}

impl CentralityReport {
    pub fn ranked_labels(&self) -> Vec<&str> {
        self.ranking
            .iter()
            .map(|&i| self.entries[i].label.as_str())
            .collect()
    }

    /// Index of the most central element (smallest diagonal, ties by label
    /// order).
    pub fn most_central(&self) -> usize {
        self.ranking[0]
    }
}

fn build_report(
    labels: &[String],
    diagonals: Vec<f64>,
    means: Vec<f64>,
    grand: f64,
    sigma: f64,
) -> CentralityReport {
    let entries: Vec<CentralityEntry> = labels
        .iter()
        .enumerate()
        .map(|(i, label)| CentralityEntry {
            index: i,
            label: label.clone(),
            diagonal: diagonals[i],
            mean_distance: means[i],
            ratio: if grand > 0.0 {
                Some(means[i] / grand)
            } else {
                None
            },
        })
        .collect();
    let mut ranking: Vec<usize> = (0..labels.len()).collect();
    // Stable sort: equal diagonals keep label order.
    ranking.sort_by(|&a, &b| diagonals[a].total_cmp(&diagonals[b]));
    CentralityReport {
        entries,
        ranking,
        grand_mean_distance: grand,
        sigma,
    }
}

/// Centrality of a metric's elements under `cfg`, via the diagonal law —
/// the full proximity matrix is never materialized.
pub fn centrality_from_metric(
    d: &MetricMatrix,
    cfg: &AveragingConfig,
) -> Result<CentralityReport, AnalysisError> {
    let (means, grand, shift) = match cfg {
        AveragingConfig::Uniform { sigma } => {
            let (means, grand) = uniform_row_stats(d.matrix());
            (means, grand, sigma / d.n() as f64)
        }
        AveragingConfig::Weighted { mean, weights } => {
            checked_weights(d, Some(weights))?;
            let (means, grand) = weighted_row_stats(d.matrix(), weights.weights());
            (means, grand, *mean)
        }
    };
    let diagonals: Vec<f64> = means.iter().map(|m| 2.0 * m - grand + shift).collect();
    Ok(build_report(
        d.labels(),
        diagonals,
        means,
        grand,
        cfg.target(),
    ))
}

/// Centrality read directly off a certified proximity's diagonal; mean
/// distances come from the recovered metric under the proximity's own
/// normalization.
pub fn centrality_from_proximity(s: &SigmaProximity) -> CentralityReport {
    let metric = crate::duality::metric_from_proximity_uncertified(s);
    let (means, grand) = match s.normalization() {
        Normalization::Uniform => uniform_row_stats(metric.matrix()),
        Normalization::Weighted(w) => weighted_row_stats(metric.matrix(), w.weights()),
    };
    build_report(s.labels(), s.diagonal(), means, grand, s.sigma())
}

/// Margins of the mean-distance lower bound `d(x,·) ≥ d(·,·)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    /// Per-element margin d(x,·) − d(·,·)/2, in label order.
    pub margins: Vec<f64>,
    pub min_margin: f64,
    /// Index of the minimizing element (smallest index on ties).
    pub min_index: usize,
    pub grand_mean: f64,
    /// Per-element ratios d(x,·)/d(·,·); absent when d(·,·) is not positive.
    pub ratios: Option<Vec<f64>>,
}

impl BoundReport {
    fn extreme_ratio(&self, take_max: bool) -> Option<(usize, f64)> {
        let ratios = self.ratios.as_ref()?;
        let mut best: Option<(usize, f64)> = None;
        for (i, &r) in ratios.iter().enumerate() {
            let beat = match best {
                None => true,
                Some((_, b)) => {
                    if take_max {
                        r > b
                    } else {
                        r < b
                    }
                }
            };
            if beat {
                best = Some((i, r));
            }
        }
        best
    }

    /// Smallest ratio and its element — the bound's tightness witness.
    pub fn min_ratio(&self) -> Option<(usize, f64)> {
        self.extreme_ratio(false)
    }

    /// Largest ratio and its element; unbounded above across instances.
    pub fn max_ratio(&self) -> Option<(usize, f64)> {
        self.extreme_ratio(true)
    }
}

/// Evaluates the bound `d(x,·) ≥ d(·,·)/2` for every element, plain or
/// weighted. For a certified metric every margin is nonnegative, and
/// strictly positive under the uniform average.
pub fn mean_distance_bound(
    d: &MetricMatrix,
    weights: Option<&WeightVector>,
) -> Result<BoundReport, AnalysisError> {
    let (means, grand) = mean_distances(d, weights)?;
    let margins: Vec<f64> = means.iter().map(|m| m - grand / 2.0).collect();
    let (mut min_index, mut min_margin) = (0, margins[0]);
    for (i, &m) in margins.iter().enumerate().skip(1) {
        if m < min_margin {
            min_margin = m;
            min_index = i;
        }
    }
    let ratios = if grand > 0.0 {
        Some(means.iter().map(|m| m / grand).collect())
    } else {
        None
    };
    Ok(BoundReport {
        margins,
        min_margin,
        min_index,
        grand_mean: grand,
        ratios,
    })
}

/// How a proximity matrix fares against the doubly-stochastic conditions:
/// Σ = 1, no negative entries, rows and columns summing to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct DoublyStochasticReport {
    pub passed: bool,
    /// |Σ − 1|.
    pub sigma_deviation: f64,
    pub min_entry: f64,
    pub min_entry_at: (usize, usize),
    /// Worst |row sum − 1| and the row achieving it.
    pub max_row_residual: f64,
    pub worst_row: usize,
    /// Worst |column sum − 1| and the column achieving it.
    pub max_col_residual: f64,
    pub worst_col: usize,
}

/// Tests whether a certified proximity is a symmetric doubly stochastic
/// matrix: true iff Σ = 1 within `tol`, every entry is ≥ −tol, and all row
/// and column sums are 1 within `tol`. Nonnegative 1-proximities always
/// qualify (rows by normalization, columns by symmetry).
pub fn is_doubly_stochastic(s: &SigmaProximity, tol: f64) -> DoublyStochasticReport {
    let m = s.matrix();
    let n = m.n();

    let (mut min_entry, mut min_entry_at) = (f64::INFINITY, (0, 0));
    for i in 0..n {
        for j in 0..n {
            let v = m.get(i, j);
            if v < min_entry {
                min_entry = v;
                min_entry_at = (i, j);
            }
        }
    }

    let (mut max_row_residual, mut worst_row) = (f64::NEG_INFINITY, 0);
    let (mut max_col_residual, mut worst_col) = (f64::NEG_INFINITY, 0);
    for i in 0..n {
        let row = abs(comp_sum(m.row(i).iter().copied()) - 1.0);
        if row > max_row_residual {
            max_row_residual = row;
            worst_row = i;
        }
        let col = abs(comp_sum((0..n).map(|r| m.get(r, i))) - 1.0);
        if col > max_col_residual {
            max_col_residual = col;
            worst_col = i;
        }
    }

    let sigma_deviation = abs(s.sigma() - 1.0);
    let passed = sigma_deviation <= tol
        && min_entry >= -tol
        && max_row_residual <= tol
        && max_col_residual <= tol;
    DoublyStochasticReport {
        passed,
        sigma_deviation,
        min_entry,
        min_entry_at,
        max_row_residual,
        worst_row,
        max_col_residual,
        worst_col,
    }
}

/// Residual of the all-ones eigenvector relation `(σ·1)(x) = Σ`.
#[derive(Debug, Clone, PartialEq)]
pub struct OnesEigencheck {
    /// max over rows of |row sum − Σ|.
    pub max_residual: f64,
    pub worst_row: usize,
    pub within_tol: bool,
}

/// Verifies that the all-ones vector is an eigenvector with eigenvalue Σ.
/// For a row-sum-normalized proximity the residual is bounded by the
/// certification tolerance; for a weighted normalization it can be large —
/// the relation belongs to the uniform case.
pub fn ones_eigencheck(s: &SigmaProximity, tol: f64) -> OnesEigencheck {
    let m = s.matrix();
    let (mut max_residual, mut worst_row) = (f64::NEG_INFINITY, 0);
    for i in 0..m.n() {
        let r = abs(comp_sum(m.row(i).iter().copied()) - s.sigma());
        if r > max_residual {
            max_residual = r;
            worst_row = i;
        }
    }
    OnesEigencheck {
        max_residual,
        worst_row,
        within_tol: max_residual <= tol,
    }
}

fn check_coeffs(count: usize, coeffs: &[f64], convex: bool) -> Result<(), AnalysisError> {
    if count == 0 {
        return Err(AnalysisError::NoItems);
    }
    if coeffs.len() != count {
        return Err(AnalysisError::CoefficientCount {
            items: count,
            coeffs: coeffs.len(),
        });
    }
    for (i, &c) in coeffs.iter().enumerate() {
        if !c.is_finite() {
            return Err(AnalysisError::NonFiniteCoefficient { index: i });
        }
        if convex && c < 0.0 {
            return Err(AnalysisError::NegativeCoefficient { index: i, value: c });
        }
        if !convex && c <= 0.0 {
            return Err(AnalysisError::NonPositiveCoefficient { index: i, value: c });
        }
    }
    if convex {
        let sum = comp_sum(coeffs.iter().copied());
        if abs(sum - 1.0) > DEFAULT_TOL {
            return Err(AnalysisError::CoefficientSum { sum });
        }
    }
    Ok(())
}

fn combine_matrices(items: &[&LabeledSquareMatrix], coeffs: &[f64]) -> LabeledSquareMatrix {
    LabeledSquareMatrix::from_fn(items[0].labels().to_vec(), |i, j| {
        comp_sum(items.iter().zip(coeffs).map(|(m, c)| c * m.get(i, j)))
    })
    .expect("finite inputs keep combinations finite")
}

fn same_normalization(a: &Normalization, b: &Normalization) -> bool {
    match (a, b) {
        (Normalization::Uniform, Normalization::Uniform) => true,
        (Normalization::Weighted(u), Normalization::Weighted(v)) => u.weights() == v.weights(),
        _ => false,
    }
}

fn max_tol_proximities(items: &[SigmaProximity]) -> f64 {
    items
        .iter()
        .map(SigmaProximity::certified_tol)
        .fold(f64::MIN, f64::max)
}

/// Convex combination of proximities sharing labels, normalization and Σ.
/// The class is closed under these, so the result re-certifies (at the
/// loosest tolerance among the items); a rejection signals numerical
/// degeneracy.
pub fn convex_combine(
    items: &[SigmaProximity],
    coeffs: &[f64],
) -> Result<SigmaProximity, AnalysisError> {
    check_coeffs(items.len(), coeffs, true)?;
    let first = &items[0];
    for item in &items[1..] {
        if !item.matrix().same_labels(first.matrix()) {
            return Err(AnalysisError::LabelMismatch);
        }
        if item.sigma() != first.sigma() {
            return Err(AnalysisError::SigmaMismatch {
                expected: first.sigma(),
                found: item.sigma(),
            });
        }
        if !same_normalization(item.normalization(), first.normalization()) {
            return Err(AnalysisError::NormalizationMismatch);
        }
    }
    let matrices: Vec<&LabeledSquareMatrix> = items.iter().map(SigmaProximity::matrix).collect();
    let combined = combine_matrices(&matrices, coeffs);
    let tol = max_tol_proximities(items);
    match first.normalization() {
        Normalization::Uniform => SigmaProximity::certify(combined, first.sigma(), tol),
        Normalization::Weighted(w) => {
            SigmaProximity::certify_weighted(combined, first.sigma(), w.clone(), tol)
        }
    }
    .map_err(AnalysisError::Certification)
}

/// Positive linear combination of metrics sharing labels. The metric axioms
/// are closed under these; the result re-certifies at the loosest tolerance
/// among the items.
pub fn cone_combine_metrics(
    items: &[MetricMatrix],
    coeffs: &[f64],
) -> Result<MetricMatrix, AnalysisError> {
    check_coeffs(items.len(), coeffs, false)?;
    let first = &items[0];
    for item in &items[1..] {
        if !item.matrix().same_labels(first.matrix()) {
            return Err(AnalysisError::LabelMismatch);
        }
    }
    let matrices: Vec<&LabeledSquareMatrix> = items.iter().map(MetricMatrix::matrix).collect();
    let combined = combine_matrices(&matrices, coeffs);
    let tol = items
        .iter()
        .map(MetricMatrix::certified_tol)
        .fold(f64::MIN, f64::max);
    MetricMatrix::certify(combined, tol).map_err(AnalysisError::Certification)
}

/// Positive linear combination of 0-proximities sharing labels and
/// normalization. Only Σ = 0 keeps the normalization condition linear, so
/// any other Σ is rejected. At Σ = 0 the combination commutes with the
/// metric↔proximity transforms.
pub fn cone_combine_proximities(
    items: &[SigmaProximity],
    coeffs: &[f64],
) -> Result<SigmaProximity, AnalysisError> {
    check_coeffs(items.len(), coeffs, false)?;
    let first = &items[0];
    for (i, item) in items.iter().enumerate() {
        if item.sigma() != 0.0 {
            return Err(AnalysisError::SigmaNotZero {
                index: i,
                sigma: item.sigma(),
            });
        }
        if !item.matrix().same_labels(first.matrix()) {
            return Err(AnalysisError::LabelMismatch);
        }
        if !same_normalization(item.normalization(), first.normalization()) {
            return Err(AnalysisError::NormalizationMismatch);
        }
    }
    let matrices: Vec<&LabeledSquareMatrix> = items.iter().map(SigmaProximity::matrix).collect();
    let combined = combine_matrices(&matrices, coeffs);
    let tol = max_tol_proximities(items);
    match first.normalization() {
        Normalization::Uniform => SigmaProximity::certify(combined, 0.0, tol),
        Normalization::Weighted(w) => {
            SigmaProximity::certify_weighted(combined, 0.0, w.clone(), tol)
        }
    }
    .map_err(AnalysisError::Certification)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::proximity_from_metric;
    use crate::numeric::max_abs_diff;
    use alloc::string::ToString;
    use alloc::vec;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    fn metric(names: &[&str], rows: Vec<Vec<f64>>) -> MetricMatrix {
        MetricMatrix::certify_default(LabeledSquareMatrix::from_rows(labels(names), rows).unwrap())
            .unwrap()
    }

    fn three_point_metric() -> MetricMatrix {
        metric(
            &["a", "b", "c"],
            vec![
                vec![0.0, 1.0, 1.0],
                vec![1.0, 0.0, 2.0],
                vec![1.0, 2.0, 0.0],
            ],
        )
    }

    #[test]
    fn mean_distances_match_hand_values() {
        let d = three_point_metric();
        let (means, grand) = mean_distances(&d, None).unwrap();
        assert!((means[0] - 2.0 / 3.0).abs() <= 1e-15);
        assert!((means[1] - 1.0).abs() <= 1e-15);
        assert!((means[2] - 1.0).abs() <= 1e-15);
        assert!((grand - 8.0 / 9.0).abs() <= 1e-15);
    }

    #[test]
    fn weighted_mean_distances_are_exact_on_dyadics() {
        let d = three_point_metric();
        let w = WeightVector::new(vec![0.5, 0.5, 0.0]).unwrap();
        let (means, grand) = mean_distances(&d, Some(&w)).unwrap();
        assert_eq!(means, vec![0.5, 0.5, 1.5]);
        assert_eq!(grand, 0.5);
    }

    #[test]
    fn mean_distances_reject_bad_weights() {
        let d = three_point_metric();
        let signed = WeightVector::new_signed(vec![1.0, 0.5, -0.5]).unwrap();
        assert_eq!(
            mean_distances(&d, Some(&signed)),
            Err(AnalysisError::SignedWeights)
        );
        let short = WeightVector::uniform(2);
        assert_eq!(
            mean_distances(&d, Some(&short)),
            Err(AnalysisError::WeightLength {
                expected: 3,
                found: 2
            })
        );
    }

    #[test]
    fn single_point_statistics_are_zero() {
        let d = metric(&["only"], vec![vec![0.0]]);
        let (means, grand) = mean_distances(&d, None).unwrap();
        assert_eq!(means, vec![0.0]);
        assert_eq!(grand, 0.0);
    }

    #[test]
    fn hub_of_almost_discrete_three_ranks_first() {
        let d = metric(
            &["x0", "x1", "x2"],
            vec![
                vec![0.0, 0.5, 0.5],
                vec![0.5, 0.0, 1.0],
                vec![0.5, 1.0, 0.0],
            ],
        );
        let report = centrality_from_metric(&d, &AveragingConfig::uniform(0.0)).unwrap();
        assert!((report.entries[0].diagonal - 2.0 / 9.0).abs() <= 1e-12);
        assert!((report.entries[1].diagonal - 5.0 / 9.0).abs() <= 1e-12);
        assert!((report.entries[2].diagonal - 5.0 / 9.0).abs() <= 1e-12);
        assert_eq!(report.ranking, vec![0, 1, 2]);
        assert_eq!(report.most_central(), 0);
    }

    #[test]
    fn proximity_and_metric_paths_agree_on_ranking() {
        let d = three_point_metric();
        let cfg = AveragingConfig::uniform(0.0);
        let from_metric = centrality_from_metric(&d, &cfg).unwrap();
        let s = proximity_from_metric(&d, &cfg).unwrap();
        let from_proximity = centrality_from_proximity(&s);
        // Tie between b and c resolved by label order in both paths.
        assert_eq!(from_metric.ranking, vec![0, 1, 2]);
        assert_eq!(from_proximity.ranking, from_metric.ranking);
        assert_eq!(from_proximity.ranked_labels(), vec!["a", "b", "c"]);
        for (m, p) in from_metric.entries.iter().zip(&from_proximity.entries) {
            assert!((m.diagonal - p.diagonal).abs() <= 1e-12);
            assert!((m.mean_distance - p.mean_distance).abs() <= 1e-12);
        }
    }

    #[test]
    fn one_point_centrality_has_sigma_diagonal_and_no_ratio() {
        let d = metric(&["only"], vec![vec![0.0]]);
        let report = centrality_from_metric(&d, &AveragingConfig::uniform(5.0)).unwrap();
        assert_eq!(report.entries[0].diagonal, 5.0);
        assert_eq!(report.entries[0].mean_distance, 0.0);
        assert_eq!(report.entries[0].ratio, None);
        assert_eq!(report.ranking, vec![0]);
    }

    #[test]
    fn bound_margins_match_hand_values() {
        let d = three_point_metric();
        let report = mean_distance_bound(&d, None).unwrap();
        assert!((report.min_margin - 2.0 / 9.0).abs() <= 1e-15);
        assert_eq!(report.min_index, 0);
        let (i, r) = report.min_ratio().unwrap();
        assert_eq!(i, 0);
        assert!((r - 0.75).abs() <= 1e-12);
        let (j, rmax) = report.max_ratio().unwrap();
        assert_eq!(j, 1); // b and c tie at 9/8; smallest index wins
        assert!((rmax - 1.125).abs() <= 1e-12);
    }

    #[test]
    fn weighted_bound_stays_nonnegative_with_zero_weights() {
        let d = three_point_metric();
        let w = WeightVector::new(vec![0.5, 0.5, 0.0]).unwrap();
        let report = mean_distance_bound(&d, Some(&w)).unwrap();
        assert_eq!(report.margins, vec![0.25, 0.25, 1.25]);
        assert_eq!(report.min_margin, 0.25);
        assert_eq!(report.min_index, 0);
    }

    #[test]
    fn point_mass_weights_drop_the_ratios() {
        let d = three_point_metric();
        let w = WeightVector::new(vec![1.0, 0.0, 0.0]).unwrap();
        let report = mean_distance_bound(&d, Some(&w)).unwrap();
        assert_eq!(report.grand_mean, 0.0);
        assert_eq!(report.ratios, None);
        assert!(report.min_margin >= 0.0);
    }

    fn two_point_one_proximity() -> SigmaProximity {
        SigmaProximity::certify_default(
            LabeledSquareMatrix::from_rows(
                labels(&["a", "b"]),
                vec![vec![0.6, 0.4], vec![0.4, 0.6]],
            )
            .unwrap(),
            1.0,
        )
        .unwrap()
    }

    #[test]
    fn doubly_stochastic_two_point_example() {
        let report = is_doubly_stochastic(&two_point_one_proximity(), DEFAULT_TOL);
        assert!(report.passed);
        assert_eq!(report.min_entry, 0.4);
        assert_eq!(report.sigma_deviation, 0.0);
    }

    #[test]
    fn zero_sigma_proximity_is_not_doubly_stochastic() {
        let d = three_point_metric();
        let s = proximity_from_metric(&d, &AveragingConfig::uniform(0.0)).unwrap();
        let report = is_doubly_stochastic(&s, DEFAULT_TOL);
        assert!(!report.passed);
        assert!(report.min_entry < 0.0);
        assert_eq!(report.sigma_deviation, 1.0);
    }

    #[test]
    fn one_by_one_identity_is_doubly_stochastic() {
        let s = SigmaProximity::certify_default(
            LabeledSquareMatrix::new(labels(&["only"]), vec![1.0]).unwrap(),
            1.0,
        )
        .unwrap();
        assert!(is_doubly_stochastic(&s, DEFAULT_TOL).passed);
    }

    #[test]
    fn ones_eigencheck_residuals() {
        let s = SigmaProximity::certify_default(
            LabeledSquareMatrix::new(labels(&["only"]), vec![7.0]).unwrap(),
            7.0,
        )
        .unwrap();
        let check = ones_eigencheck(&s, DEFAULT_TOL);
        assert_eq!(check.max_residual, 0.0);
        assert!(check.within_tol);

        let d = three_point_metric();
        let s = proximity_from_metric(&d, &AveragingConfig::uniform(0.0)).unwrap();
        let check = ones_eigencheck(&s, DEFAULT_TOL);
        assert!(check.max_residual <= 1e-15);
        assert!(check.within_tol);
    }

    #[test]
    fn convex_combination_of_copies_is_identity() {
        let d = three_point_metric();
        let s = proximity_from_metric(&d, &AveragingConfig::uniform(1.0)).unwrap();
        let single = convex_combine(core::slice::from_ref(&s), &[1.0]).unwrap();
        assert_eq!(single.matrix().values(), s.matrix().values());
        let halves = convex_combine(&[s.clone(), s.clone()], &[0.5, 0.5]).unwrap();
        assert_eq!(halves.matrix().values(), s.matrix().values());
        assert_eq!(halves.sigma(), 1.0);
    }

    #[test]
    fn convex_combination_of_different_images_certifies() {
        let d1 = three_point_metric();
        let d2 = metric(
            &["a", "b", "c"],
            vec![
                vec![0.0, 2.0, 2.0],
                vec![2.0, 0.0, 2.0],
                vec![2.0, 2.0, 0.0],
            ],
        );
        let cfg = AveragingConfig::uniform(1.0);
        let s1 = proximity_from_metric(&d1, &cfg).unwrap();
        let s2 = proximity_from_metric(&d2, &cfg).unwrap();
        let mix = convex_combine(&[s1, s2], &[0.3, 0.7]).unwrap();
        assert_eq!(mix.sigma(), 1.0);
        for i in 0..3 {
            let sum = comp_sum(mix.row(i).iter().copied());
            assert!((sum - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn convex_combination_input_errors() {
        let d = three_point_metric();
        let s0 = proximity_from_metric(&d, &AveragingConfig::uniform(0.0)).unwrap();
        let s1 = proximity_from_metric(&d, &AveragingConfig::uniform(1.0)).unwrap();
        assert_eq!(convex_combine(&[], &[]), Err(AnalysisError::NoItems));
        assert_eq!(
            convex_combine(core::slice::from_ref(&s0), &[0.5, 0.5]),
            Err(AnalysisError::CoefficientCount {
                items: 1,
                coeffs: 2
            })
        );
        assert!(matches!(
            convex_combine(&[s0.clone(), s1.clone()], &[0.5, 0.5]),
            Err(AnalysisError::SigmaMismatch { .. })
        ));
        assert!(matches!(
            convex_combine(&[s0.clone(), s0.clone()], &[0.5, 0.6]),
            Err(AnalysisError::CoefficientSum { .. })
        ));
        assert!(matches!(
            convex_combine(&[s0.clone(), s0.clone()], &[-0.1, 1.1]),
            Err(AnalysisError::NegativeCoefficient { index: 0, .. })
        ));

        let w = WeightVector::new(vec![0.5, 0.5, 0.0]).unwrap();
        let weighted = proximity_from_metric(&d, &AveragingConfig::weighted(0.0, w)).unwrap();
        assert_eq!(
            convex_combine(&[s0, weighted], &[0.5, 0.5]),
            Err(AnalysisError::NormalizationMismatch)
        );
    }

    #[test]
    fn cone_combination_scales_and_adds_metrics() {
        let d = three_point_metric();
        let doubled = cone_combine_metrics(core::slice::from_ref(&d), &[2.0]).unwrap();
        assert_eq!(doubled.get(1, 2), 4.0);
        let d2 = metric(
            &["a", "b", "c"],
            vec![
                vec![0.0, 2.0, 2.0],
                vec![2.0, 0.0, 2.0],
                vec![2.0, 2.0, 0.0],
            ],
        );
        let sum = cone_combine_metrics(&[d.clone(), d2], &[1.0, 1.0]).unwrap();
        assert_eq!(sum.get(0, 1), 3.0);
        assert!(matches!(
            cone_combine_metrics(core::slice::from_ref(&d), &[0.0]),
            Err(AnalysisError::NonPositiveCoefficient { index: 0, .. })
        ));
    }

    #[test]
    fn cone_combination_commutes_with_the_forward_transform() {
        let d1 = three_point_metric();
        let d2 = metric(
            &["a", "b", "c"],
            vec![
                vec![0.0, 2.0, 2.0],
                vec![2.0, 0.0, 2.0],
                vec![2.0, 2.0, 0.0],
            ],
        );
        let cfg = AveragingConfig::uniform(0.0);
        let (alpha, beta) = (1.5, 0.25);
        let s1 = proximity_from_metric(&d1, &cfg).unwrap();
        let s2 = proximity_from_metric(&d2, &cfg).unwrap();
        let combined_images = cone_combine_proximities(&[s1, s2], &[alpha, beta]).unwrap();
        let combined_metrics = cone_combine_metrics(&[d1, d2], &[alpha, beta]).unwrap();
        let image_of_combined = proximity_from_metric(&combined_metrics, &cfg).unwrap();
        let dev = max_abs_diff(
            combined_images.matrix().values(),
            image_of_combined.matrix().values(),
        );
        assert!(dev <= 1e-12, "deviation {dev}");
    }

    #[test]
    fn cone_combination_rejects_nonzero_sigma() {
        let d = three_point_metric();
        let s1 = proximity_from_metric(&d, &AveragingConfig::uniform(1.0)).unwrap();
        assert!(matches!(
            cone_combine_proximities(core::slice::from_ref(&s1), &[2.0]),
            Err(AnalysisError::SigmaNotZero { index: 0, .. })
        ));
    }
}
