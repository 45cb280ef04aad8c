//! Axiom validation with explicit tolerances.
//!
//! A validation run produces a [`ValidationReport`]: one [`Check`] per axiom,
//! each carrying the worst-case margin, the witness indices achieving it and
//! the resulting outcome. Three check directions exist:
//!
//! - **equality** — a deviation that must satisfy `|deviation| ≤ tol`;
//! - **nonstrict inequality** — a margin that must satisfy `margin ≥ −tol`;
//! - **strict inequality** — a margin that must satisfy `margin > tol`.
//!   Margins in `(0, tol]` are reported as [`CheckOutcome::Indeterminate`]:
//!   floating point cannot certify strictness below noise level, so they
//!   fail certification.
//!
//! Triple enumeration is exhaustive over all ordered triples, with no
//! sampling; scans run in lexicographic index order and only a strictly
//! worse margin replaces the current witness, so the reported witness is
//! always the lexicographically smallest one achieving the worst margin.
//! Vacuous checks (e.g. strict positivity on a single-element set) pass with
//! no margin and no witness.

use alloc::vec::Vec;
use core::fmt;

use crate::matrix::LabeledSquareMatrix;
use crate::numeric::{abs, comp_sum, dot};
use crate::weights::WeightVector;

/// Which family of axioms a report covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValidationKind {
    Metric,
    SigmaProximity,
}

impl ValidationKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ValidationKind::Metric => "metric",
            ValidationKind::SigmaProximity => "sigma-proximity",
        }
    }
}

/// Identifies the individual axiom (or derived property) a check covers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    /// `d(x,x) = 0` (equality; deviation is `max |d(x,x)|`).
    ZeroDiagonal,
    /// `d(x,y) > 0` for `x ≠ y` (strict; margin is the minimum off-diagonal).
    PositiveOffDiagonal,
    /// Metric form `d(x,y) + d(x,z) − d(y,z) ≥ 0`, or proximity form
    /// `σ(x,x) − σ(x,y) − σ(x,z) + σ(y,z) ≥ 0`, over all ordered triples
    /// (nonstrict; margin is the minimum defect/slack).
    Triangle,
    /// `f(x,y) = f(y,x)` (equality; deviation is `max |f(x,y) − f(y,x)|`).
    Symmetry,
    /// `d(x,y) ≥ 0` (nonstrict; margin is the minimum entry).
    Nonnegativity,
    /// Row sums equal Σ, or the weighted row averages equal m
    /// (equality; deviation is the worst row residual).
    Normalization,
    /// The strict triangle case `z = y, x ≠ y`:
    /// `σ(x,x) − 2σ(x,y) + σ(y,y) > 0` (strict; margin is the minimum).
    StrictTriangle,
    /// `σ(x,x) − σ(x,y) > 0` for `x ≠ y` (strict; derived property).
    Egocentrism,
}

impl Axiom {
    pub fn as_str(self) -> &'static str {
        match self {
            Axiom::ZeroDiagonal => "zero-diagonal",
            Axiom::PositiveOffDiagonal => "positive-off-diagonal",
            Axiom::Triangle => "triangle",
            Axiom::Symmetry => "symmetry",
            Axiom::Nonnegativity => "nonnegativity",
            Axiom::Normalization => "normalization",
            Axiom::StrictTriangle => "strict-triangle",
            Axiom::Egocentrism => "egocentrism",
        }
    }
}

/// How a check's margin is compared against the tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// `|deviation| ≤ tol`.
    Equality,
    /// `margin ≥ −tol`.
    NonStrict,
    /// `margin > tol`, with `(0, tol]` indeterminate.
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    /// A strict margin inside `(0, tol]`: not refutable, not certifiable.
    Indeterminate,
    Fail,
}

/// Indices of the entries achieving a check's worst margin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Witness {
    Element(usize),
    Pair(usize, usize),
    Triple(usize, usize, usize),
}

impl Witness {
    /// The witness as a short index list (for serialization).
    pub fn indices(&self) -> Vec<usize> {
        match *self {
            Witness::Element(x) => alloc::vec![x],
            Witness::Pair(x, y) => alloc::vec![x, y],
            Witness::Triple(x, y, z) => alloc::vec![x, y, z],
        }
    }
}

/// A single axiom check. `margin` and `witness` are `None` exactly when the
/// check is vacuous (no index tuple to quantify over), which counts as a
/// pass.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub axiom: Axiom,
    pub direction: Direction,
    /// Worst-case margin (inequalities) or worst absolute deviation
    /// (equalities).
    pub margin: Option<f64>,
    pub witness: Option<Witness>,
    /// Informational checks document derived properties; they do not gate
    /// the report's `passed` flag.
    pub informational: bool,
    pub outcome: CheckOutcome,
}

impl Check {
    fn new(
        axiom: Axiom,
        direction: Direction,
        worst: Option<(f64, Witness)>,
        informational: bool,
        tol: f64,
    ) -> Self {
        let outcome = match worst {
            None => CheckOutcome::Pass,
            Some((margin, _)) => match direction {
                Direction::Equality => {
                    if abs(margin) <= tol {
                        CheckOutcome::Pass
                    } else {
                        CheckOutcome::Fail
                    }
                }
                Direction::NonStrict => {
                    if margin >= -tol {
                        CheckOutcome::Pass
                    } else {
                        CheckOutcome::Fail
                    }
                }
                Direction::Strict => {
                    if margin > tol {
                        CheckOutcome::Pass
                    } else if margin > 0.0 {
                        CheckOutcome::Indeterminate
                    } else {
                        CheckOutcome::Fail
                    }
                }
            },
        };
        Check {
            axiom,
            direction,
            margin: worst.map(|(m, _)| m),
            witness: worst.map(|(_, w)| w),
            informational,
            outcome,
        }
    }
}

/// Result of validating a matrix against one axiom family.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub kind: ValidationKind,
    /// Tolerance the checks were evaluated at.
    pub tol: f64,
    /// True iff every non-informational check passed.
    pub passed: bool,
    pub checks: Vec<Check>,
}

impl ValidationReport {
    fn from_checks(kind: ValidationKind, tol: f64, checks: Vec<Check>) -> Self {
        let passed = checks
            .iter()
            .filter(|c| !c.informational)
            .all(|c| c.outcome == CheckOutcome::Pass);
        ValidationReport {
            kind,
            tol,
            passed,
            checks,
        }
    }

    /// The check for `axiom`, if the report contains one.
    pub fn check(&self, axiom: Axiom) -> Option<&Check> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    /// Axioms of the non-informational checks that did not pass.
    pub fn failed_axioms(&self) -> impl Iterator<Item = Axiom> + '_ {
        self.checks
            .iter()
            .filter(|c| !c.informational && c.outcome != CheckOutcome::Pass)
            .map(|c| c.axiom)
    }
}

/// Certification failure for [`crate::MetricMatrix`] / [`crate::SigmaProximity`].
#[derive(Debug, Clone, PartialEq)]
pub enum CertificationError {
    /// Validation ran and at least one gating check did not pass.
    Failed(ValidationReport),
    /// Weight vector length does not match the matrix side.
    WeightLength { expected: usize, found: usize },
    /// Weighted certification needs a monotone functional; the supplied
    /// weight vector contains a negative weight.
    SignedWeights,
}

impl fmt::Display for CertificationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificationError::Failed(report) => {
                write!(f, "{} validation failed:", report.kind.as_str())?;
                for axiom in report.failed_axioms() {
                    write!(f, " {}", axiom.as_str())?;
                }
                Ok(())
            }
            CertificationError::WeightLength { expected, found } => {
                write!(
                    f,
                    "weight vector has length {found}, matrix needs {expected}"
                )
            }
            CertificationError::SignedWeights => {
                write!(f, "weighted certification requires nonnegative weights")
            }
        }
    }
}

impl core::error::Error for CertificationError {}

fn check_tol(tol: f64) {
    assert!(
        tol.is_finite() && tol > 0.0,
        "tolerance must be finite and positive"
    );
}

/// Scan state that keeps the lexicographically smallest witness of the worst
/// margin: `better` decides whether a candidate strictly beats the current
/// one.
struct Worst<F: Fn(f64, f64) -> bool> {
    state: Option<(f64, Witness)>,
    better: F,
}

impl<F: Fn(f64, f64) -> bool> Worst<F> {
    fn new(better: F) -> Self {
        Worst {
            state: None,
            better,
        }
    }

    #[inline]
    fn offer(&mut self, value: f64, witness: Witness) {
        match &self.state {
            Some((current, _)) if !(self.better)(value, *current) => {}
            _ => self.state = Some((value, witness)),
        }
    }

    fn into_inner(self) -> Option<(f64, Witness)> {
        self.state
    }
}

fn min_scan() -> Worst<impl Fn(f64, f64) -> bool> {
    Worst::new(|candidate, current| candidate < current)
}

fn max_scan() -> Worst<impl Fn(f64, f64) -> bool> {
    Worst::new(|candidate, current| candidate > current)
}

/// Minimum triangle defect `m(x,y) + m(x,z) − m(y,z)` over all ordered
/// triples, with the lexicographically smallest minimizing triple.
fn min_triangle_defect(m: &LabeledSquareMatrix) -> (f64, Witness) {
    let n = m.n();
    let mut best = f64::INFINITY;
    let mut witness = Witness::Triple(0, 0, 0);
    for x in 0..n {
        let row_x = m.row(x);
        for y in 0..n {
            let d_xy = row_x[y];
            let row_y = m.row(y);
            for z in 0..n {
                let defect = d_xy + row_x[z] - row_y[z];
                if defect < best {
                    best = defect;
                    witness = Witness::Triple(x, y, z);
                }
            }
        }
    }
    (best, witness)
}

/// Minimum proximity triangle slack `σ(x,x) − σ(x,y) − σ(x,z) + σ(y,z)` over
/// all ordered triples.
fn min_triangle_slack(m: &LabeledSquareMatrix) -> (f64, Witness) {
    let n = m.n();
    let mut best = f64::INFINITY;
    let mut witness = Witness::Triple(0, 0, 0);
    for x in 0..n {
        let row_x = m.row(x);
        let head = row_x[x];
        for y in 0..n {
            let base = head - row_x[y];
            let row_y = m.row(y);
            for z in 0..n {
                let slack = base - row_x[z] + row_y[z];
                if slack < best {
                    best = slack;
                    witness = Witness::Triple(x, y, z);
                }
            }
        }
    }
    (best, witness)
}

fn symmetry_deviation(m: &LabeledSquareMatrix) -> Option<(f64, Witness)> {
    let n = m.n();
    let mut worst = max_scan();
    for i in 0..n {
        for j in (i + 1)..n {
            worst.offer(abs(m.get(i, j) - m.get(j, i)), Witness::Pair(i, j));
        }
    }
    worst.into_inner()
}

/// Checks the metric axioms: zero diagonal, strictly positive off-diagonal,
/// the triangle inequality over all ordered triples, plus the derived
/// symmetry and nonnegativity properties (checked directly). All five gate
/// the result.
///
/// Panics if `tol` is not finite and positive.
pub fn validate_metric(m: &LabeledSquareMatrix, tol: f64) -> ValidationReport {
    check_tol(tol);
    let n = m.n();

    let mut diag = max_scan();
    for i in 0..n {
        diag.offer(abs(m.get(i, i)), Witness::Element(i));
    }

    let mut off = min_scan();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                off.offer(m.get(i, j), Witness::Pair(i, j));
            }
        }
    }

    let triangle = min_triangle_defect(m);

    let mut nonneg = min_scan();
    for i in 0..n {
        for j in 0..n {
            nonneg.offer(m.get(i, j), Witness::Pair(i, j));
        }
    }

    let checks = alloc::vec![
        Check::new(
            Axiom::ZeroDiagonal,
            Direction::Equality,
            diag.into_inner(),
            false,
            tol
        ),
        Check::new(
            Axiom::PositiveOffDiagonal,
            Direction::Strict,
            off.into_inner(),
            false,
            tol
        ),
        Check::new(
            Axiom::Triangle,
            Direction::NonStrict,
            Some(triangle),
            false,
            tol
        ),
        Check::new(
            Axiom::Symmetry,
            Direction::Equality,
            symmetry_deviation(m),
            false,
            tol
        ),
        Check::new(
            Axiom::Nonnegativity,
            Direction::NonStrict,
            nonneg.into_inner(),
            false,
            tol
        ),
    ];
    ValidationReport::from_checks(ValidationKind::Metric, tol, checks)
}

/// Checks the Σ-proximity axioms under plain row-sum normalization:
/// every row sums to `sigma`, the proximity triangle inequality holds over
/// all ordered triples, and its `z = y, x ≠ y` case is strict. Symmetry and
/// egocentrism follow from the axioms and are reported as informational
/// checks.
///
/// Panics if `tol` is not finite and positive.
pub fn validate_sigma_proximity(m: &LabeledSquareMatrix, sigma: f64, tol: f64) -> ValidationReport {
    check_tol(tol);
    let residual = |row: &[f64]| comp_sum(row.iter().copied()) - sigma;
    sigma_report(m, residual, tol)
}

/// Checks the Σ-proximity axioms under a weighted averaging functional:
/// the weighted average of every row equals `mean`; the triangle checks are
/// the same as in [`validate_sigma_proximity`].
///
/// Panics if `tol` is not finite and positive, or if the weight length does
/// not match the matrix side. (The weights may be signed; certification via
/// [`crate::SigmaProximity::certify_weighted`] additionally requires them
/// nonnegative.)
pub fn validate_sigma_proximity_weighted(
    m: &LabeledSquareMatrix,
    mean: f64,
    weights: &WeightVector,
    tol: f64,
) -> ValidationReport {
    check_tol(tol);
    assert_eq!(
        weights.len(),
        m.n(),
        "weight vector length must match the matrix side"
    );
    let residual = |row: &[f64]| dot(weights.weights(), row) - mean;
    sigma_report(m, residual, tol)
}

fn sigma_report<F: Fn(&[f64]) -> f64>(
    m: &LabeledSquareMatrix,
    row_residual: F,
    tol: f64,
) -> ValidationReport {
    let n = m.n();

    let mut norm = max_scan();
    for i in 0..n {
        norm.offer(abs(row_residual(m.row(i))), Witness::Element(i));
    }

    let triangle = min_triangle_slack(m);

    let mut strict = min_scan();
    let mut ego = min_scan();
    for x in 0..n {
        let s_xx = m.get(x, x);
        for y in 0..n {
            if x == y {
                continue;
            }
            let s_xy = m.get(x, y);
            strict.offer(s_xx - 2.0 * s_xy + m.get(y, y), Witness::Pair(x, y));
            ego.offer(s_xx - s_xy, Witness::Pair(x, y));
        }
    }

    let checks = alloc::vec![
        Check::new(
            Axiom::Normalization,
            Direction::Equality,
            norm.into_inner(),
            false,
            tol
        ),
        Check::new(
            Axiom::Triangle,
            Direction::NonStrict,
            Some(triangle),
            false,
            tol
        ),
        Check::new(
            Axiom::StrictTriangle,
            Direction::Strict,
            strict.into_inner(),
            false,
            tol
        ),
        Check::new(
            Axiom::Symmetry,
            Direction::Equality,
            symmetry_deviation(m),
            true,
            tol
        ),
        Check::new(
            Axiom::Egocentrism,
            Direction::Strict,
            ego.into_inner(),
            true,
            tol
        ),
    ];
    ValidationReport::from_checks(ValidationKind::SigmaProximity, tol, checks)
}
