//! JSON shapes for the reports printed on standard output. These mirror the
//! library's report types so the core crate stays serialization-free.

use proxima_core::analysis::{BoundReport, CentralityReport};
use proxima_core::validate::{CheckOutcome, Direction, ValidationReport};
use serde::Serialize;

fn direction_str(d: Direction) -> &'static str {
    match d {
        Direction::Equality => "equality",
        Direction::NonStrict => "non-strict",
        Direction::Strict => "strict",
    }
}

fn outcome_str(o: CheckOutcome) -> &'static str {
    match o {
        CheckOutcome::Pass => "pass",
        CheckOutcome::Indeterminate => "indeterminate",
        CheckOutcome::Fail => "fail",
    }
}

#[derive(Serialize)]
pub struct CheckJson {
    pub axiom: &'static str,
    pub direction: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_labels: Option<Vec<String>>,
    pub informational: bool,
    pub outcome: &'static str,
}

#[derive(Serialize)]
pub struct ValidationJson {
    pub kind: &'static str,
    pub tol: f64,
    pub passed: bool,
    pub checks: Vec<CheckJson>,
}

pub fn validation_json(report: &ValidationReport, labels: &[String]) -> ValidationJson {
    let checks = report
        .checks
        .iter()
        .map(|check| {
            let witness = check.witness.map(|w| w.indices());
            let witness_labels = witness
                .as_ref()
                .map(|ids| ids.iter().map(|&i| labels[i].clone()).collect());
            CheckJson {
                axiom: check.axiom.as_str(),
                direction: direction_str(check.direction),
                margin: check.margin,
                witness,
                witness_labels,
                informational: check.informational,
                outcome: outcome_str(check.outcome),
            }
        })
        .collect();
    ValidationJson {
        kind: report.kind.as_str(),
        tol: report.tol,
        passed: report.passed,
        checks,
    }
}

#[derive(Serialize)]
pub struct CentralityEntryJson {
    pub index: usize,
    pub label: String,
    pub diagonal: f64,
    pub mean_distance: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio: Option<f64>,
}

#[derive(Serialize)]
pub struct CentralityJson {
    pub sigma: f64,
    pub grand_mean_distance: f64,
    pub entries: Vec<CentralityEntryJson>,
    /// Indices, most central first.
    pub ranking: Vec<usize>,
    pub ranked_labels: Vec<String>,
    pub most_central: String,
}

pub fn centrality_json(report: &CentralityReport) -> CentralityJson {
    let entries = report
        .entries
        .iter()
        .map(|e| CentralityEntryJson {
            index: e.index,
            label: e.label.clone(),
            diagonal: e.diagonal,
            mean_distance: e.mean_distance,
            ratio: e.ratio,
        })
        .collect();
    CentralityJson {
        sigma: report.sigma,
        grand_mean_distance: report.grand_mean_distance,
        entries,
        ranking: report.ranking.clone(),
        ranked_labels: report
            .ranked_labels()
            .iter()
            .map(|s| s.to_string())
            .collect(),
        most_central: report.entries[report.most_central()].label.clone(),
    }
}

#[derive(Serialize)]
pub struct ExtremeRatioJson {
    pub index: usize,
    pub label: String,
    pub ratio: f64,
}

#[derive(Serialize)]
pub struct BoundJson {
    pub tol: f64,
    /// True iff no margin falls below −tol.
    pub passed: bool,
    pub grand_mean: f64,
    pub min_margin: f64,
    pub min_index: usize,
    pub min_label: String,
    /// Per-element d(x,·) − d(·,·)/2, in label order.
    pub margins: Vec<f64>,
    /// Per-element d(x,·)/d(·,·); absent when d(·,·) is not positive.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratios: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_ratio: Option<ExtremeRatioJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_ratio: Option<ExtremeRatioJson>,
}

pub fn bound_json(report: &BoundReport, labels: &[String], tol: f64, passed: bool) -> BoundJson {
    let extreme = |pick: Option<(usize, f64)>| {
        pick.map(|(index, ratio)| ExtremeRatioJson {
            index,
            label: labels[index].clone(),
            ratio,
        })
    };
    BoundJson {
        tol,
        passed,
        grand_mean: report.grand_mean,
        min_margin: report.min_margin,
        min_index: report.min_index,
        min_label: labels[report.min_index].clone(),
        margins: report.margins.clone(),
        ratios: report.ratios.clone(),
        min_ratio: extreme(report.min_ratio()),
        max_ratio: extreme(report.max_ratio()),
    }
}

#[derive(Serialize)]
pub struct RoundtripJson {
    pub kind: &'static str,
    /// Σ (uniform) or m (weighted) used for the forward transform.
    pub target: f64,
    pub weighted: bool,
    pub deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Serialize)]
pub struct ConvertJson {
    /// Kind written: "metric" or "sigma".
    pub kind: &'static str,
    pub n: usize,
    /// Output normalization for --to sigma; absent for --to metric.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub target: Option<f64>,
    pub weighted: bool,
    pub output: String,
    pub sidecar: String,
}

#[derive(Serialize)]
pub struct GenerateJson {
    pub family: &'static str,
    pub n: usize,
    pub output: String,
    pub sidecar: String,
}
