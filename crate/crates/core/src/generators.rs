//! Constructors for certified metric instances: the two extremal families
//! for the mean-distance bound, seeded random point clouds, and
//! shortest-path ingestion of weighted graphs.
//!
//! Every generator validates its output before returning it, so the result
//! is a certified [`MetricMatrix`] at [`DEFAULT_TOL`]. Seeded generators are
//! bit-reproducible for a fixed seed and parameter set.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::DEFAULT_TOL;
use crate::matrix::LabeledSquareMatrix;
use crate::metric::MetricMatrix;
use crate::numeric::{abs, comp_sum, sqrt};
use crate::validate::CertificationError;

/// How many derived seeds [`euclidean_random`] tries before giving up on
/// separating coincident points.
const MAX_RESAMPLES: u32 = 16;

#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorError {
    /// The almost-discrete family needs at least a hub and one other point.
    AlmostDiscreteSize {
        n: usize,
    },
    /// The segment needs at least its two endpoints.
    SegmentSize {
        k: usize,
    },
    /// The remote point's distance must be finite and positive.
    RemoteDistance {
        r: f64,
    },
    EuclideanSize {
        n: usize,
    },
    Dimension {
        dim: usize,
    },
    /// Resampling could not separate all points (pathological seed/scale).
    CoincidentPoints {
        attempts: u32,
    },
    EmptyGraph,
    SelfLoop {
        label: String,
    },
    /// Edge weights must be finite and strictly positive.
    BadEdgeWeight {
        source: String,
        target: String,
        weight: f64,
    },
    /// No path between two vertices.
    Disconnected {
        a: String,
        b: String,
    },
    /// The constructed matrix failed metric validation (e.g. vanishingly
    /// small distances below the certification tolerance).
    Certification(CertificationError),
}

impl fmt::Display for GeneratorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorError::AlmostDiscreteSize { n } => {
                write!(f, "almost-discrete metric needs n >= 2, got {n}")
            }
            GeneratorError::SegmentSize { k } => {
                write!(f, "segment needs k >= 2 points, got {k}")
            }
            GeneratorError::RemoteDistance { r } => {
                write!(f, "remote distance must be finite and positive, got {r}")
            }
            GeneratorError::EuclideanSize { n } => {
                write!(f, "point cloud needs n >= 1, got {n}")
            }
            GeneratorError::Dimension { dim } => {
                write!(f, "point cloud needs dim >= 1, got {dim}")
            }
            GeneratorError::CoincidentPoints { attempts } => {
                write!(
                    f,
                    "could not separate coincident points after {attempts} attempts"
                )
            }
            GeneratorError::EmptyGraph => write!(f, "edge list is empty"),
            GeneratorError::SelfLoop { label } => write!(f, "self-loop at {label:?}"),
            GeneratorError::BadEdgeWeight {
                source,
                target,
                weight,
            } => {
                write!(
                    f,
                    "edge {source:?} - {target:?} has invalid weight {weight}"
                )
            }
            GeneratorError::Disconnected { a, b } => {
                write!(f, "graph not connected: no path between {a:?} and {b:?}")
            }
            GeneratorError::Certification(e) => write!(f, "generated matrix rejected: {e}"),
        }
    }
}

impl core::error::Error for GeneratorError {}

fn certify(m: LabeledSquareMatrix) -> Result<MetricMatrix, GeneratorError> {
    MetricMatrix::certify(m, DEFAULT_TOL).map_err(GeneratorError::Certification)
}

/// The almost-discrete metric: a hub `x0` at distance 1/2 from everything,
/// all other pairs at distance 1. The hub's mean-distance ratio
/// `d(x0,·)/d(·,·)` equals `n/(2(n−1))`, approaching the bound's 1/2 factor
/// from above as n grows — the tightness witness for the bound.
pub fn almost_discrete(n: usize) -> Result<MetricMatrix, GeneratorError> {
    if n < 2 {
        return Err(GeneratorError::AlmostDiscreteSize { n });
    }
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let m = LabeledSquareMatrix::from_fn(labels, |i, j| {
        if i == j {
            0.0
        } else if i == 0 || j == 0 {
            0.5
        } else {
            1.0
        }
    })
    .expect("constructed values are finite");
    certify(m)
}

/// `k` points evenly spaced on the unit segment plus one collinear point at
/// distance `r` beyond point `s0` (coordinate −r). The remote point's
/// mean-distance ratio grows without bound in `r`, showing the bound has no
/// counterpart above.
pub fn segment_remote(k: usize, r: f64) -> Result<MetricMatrix, GeneratorError> {
    if k < 2 {
        return Err(GeneratorError::SegmentSize { k });
    }
    if !r.is_finite() || r <= 0.0 {
        return Err(GeneratorError::RemoteDistance { r });
    }
    let mut labels: Vec<String> = (0..k).map(|i| format!("s{i}")).collect();
    labels.push("remote".to_string());
    let mut coords: Vec<f64> = (0..k).map(|i| i as f64 / (k - 1) as f64).collect();
    coords.push(-r);
    let m = LabeledSquareMatrix::from_fn(labels, |i, j| abs(coords[i] - coords[j]))
        .expect("constructed values are finite");
    certify(m)
}

fn derived_seed(seed: u64, attempt: u32) -> u64 {
    seed.wrapping_add(u64::from(attempt).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// `n` points drawn uniformly from the unit cube in `dim` dimensions with
/// pairwise Euclidean distances. Deterministic per `(n, dim, seed)`. If two
/// points land closer than the certification tolerance (strict positivity
/// could not certify), the whole cloud is redrawn from a derived seed, a
/// bounded number of times.
pub fn euclidean_random(n: usize, dim: usize, seed: u64) -> Result<MetricMatrix, GeneratorError> {
    if n < 1 {
        return Err(GeneratorError::EuclideanSize { n });
    }
    if dim < 1 {
        return Err(GeneratorError::Dimension { dim });
    }
    let labels: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    for attempt in 0..MAX_RESAMPLES {
        let mut rng = ChaCha8Rng::seed_from_u64(derived_seed(seed, attempt));
        let points: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..dim).map(|_| rng.random::<f64>()).collect())
            .collect();
        let m = LabeledSquareMatrix::from_fn(labels.clone(), |i, j| {
            let (a, b) = (&points[i], &points[j]);
            sqrt(comp_sum((0..dim).map(|t| {
                let d = a[t] - b[t];
                d * d
            })))
        })
        .expect("constructed values are finite");

        let mut min_off = f64::INFINITY;
        for i in 0..n {
            for j in 0..n {
                if i != j && m.get(i, j) < min_off {
                    min_off = m.get(i, j);
                }
            }
        }
        if n > 1 && min_off <= DEFAULT_TOL {
            continue;
        }
        return certify(m);
    }
    Err(GeneratorError::CoincidentPoints {
        attempts: MAX_RESAMPLES,
    })
}

/// All-pairs shortest-path distances of an undirected, connected graph with
/// positive edge weights, by exhaustive cubic closure. Vertex labels appear
/// in first-encounter order; duplicate edges keep the smaller weight.
pub fn graph_metric<S: AsRef<str>>(edges: &[(S, S, f64)]) -> Result<MetricMatrix, GeneratorError> {
    if edges.is_empty() {
        return Err(GeneratorError::EmptyGraph);
    }

    let mut labels: Vec<String> = Vec::new();
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut intern = |name: &str, labels: &mut Vec<String>| -> usize {
        if let Some(&i) = index.get(name) {
            return i;
        }
        let i = labels.len();
        labels.push(name.to_string());
        index.insert(name.to_string(), i);
        i
    };

    let mut resolved: Vec<(usize, usize, f64)> = Vec::with_capacity(edges.len());
    for (a, b, w) in edges {
        let (a, b) = (a.as_ref(), b.as_ref());
        if a == b {
            return Err(GeneratorError::SelfLoop {
                label: a.to_string(),
            });
        }
        if !w.is_finite() || *w <= 0.0 {
            return Err(GeneratorError::BadEdgeWeight {
                source: a.to_string(),
                target: b.to_string(),
                weight: *w,
            });
        }
        let i = intern(a, &mut labels);
        let j = intern(b, &mut labels);
        resolved.push((i, j, *w));
    }

    let n = labels.len();
    let mut dist = alloc::vec![f64::INFINITY; n * n];
    for i in 0..n {
        dist[i * n + i] = 0.0;
    }
    for (i, j, w) in resolved {
        if w < dist[i * n + j] {
            dist[i * n + j] = w;
            dist[j * n + i] = w;
        }
    }
    for k in 0..n {
        for i in 0..n {
            let d_ik = dist[i * n + k];
            if d_ik.is_infinite() {
                continue;
            }
            for j in 0..n {
                let through = d_ik + dist[k * n + j];
                if through < dist[i * n + j] {
                    dist[i * n + j] = through;
                }
            }
        }
    }

    for i in 0..n {
        for j in 0..n {
            if dist[i * n + j].is_infinite() {
                return Err(GeneratorError::Disconnected {
                    a: labels[i].clone(),
                    b: labels[j].clone(),
                });
            }
        }
    }

    let m = LabeledSquareMatrix::new(labels, dist).expect("closure leaves finite distances");
    certify(m)
}

/// A generator family plus its parameters, for dispatch from configuration
/// or command-line input.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    AlmostDiscrete { n: usize },
    SegmentRemote { k: usize, r: f64 },
    EuclideanRandom { n: usize, dim: usize, seed: u64 },
    GraphShortestPath { edges: Vec<(String, String, f64)> },
}

impl GeneratorSpec {
    pub fn family(&self) -> &'static str {
        match self {
            GeneratorSpec::AlmostDiscrete { .. } => "almost-discrete",
            GeneratorSpec::SegmentRemote { .. } => "segment-remote",
            GeneratorSpec::EuclideanRandom { .. } => "euclidean-random",
            GeneratorSpec::GraphShortestPath { .. } => "graph-shortest-path",
        }
    }

    pub fn generate(&self) -> Result<MetricMatrix, GeneratorError> {
        match self {
            GeneratorSpec::AlmostDiscrete { n } => almost_discrete(*n),
            GeneratorSpec::SegmentRemote { k, r } => segment_remote(*k, *r),
            GeneratorSpec::EuclideanRandom { n, dim, seed } => euclidean_random(*n, *dim, *seed),
            GeneratorSpec::GraphShortestPath { edges } => graph_metric(edges),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::mean_distance_bound;

    #[test]
    fn almost_discrete_two_points() {
        let m = almost_discrete(2).unwrap();
        assert_eq!(m.matrix().values(), &[0.0, 0.5, 0.5, 0.0]);
        assert_eq!(m.labels(), &["x0".to_string(), "x1".to_string()]);
    }

    #[test]
    fn almost_discrete_rejects_tiny_n() {
        assert!(matches!(
            almost_discrete(0),
            Err(GeneratorError::AlmostDiscreteSize { n: 0 })
        ));
        assert!(matches!(
            almost_discrete(1),
            Err(GeneratorError::AlmostDiscreteSize { n: 1 })
        ));
    }

    #[test]
    fn almost_discrete_hub_ratio_matches_closed_form() {
        for n in [3usize, 10] {
            let m = almost_discrete(n).unwrap();
            let report = mean_distance_bound(&m, None).unwrap();
            let (idx, ratio) = report.min_ratio().unwrap();
            assert_eq!(idx, 0, "hub minimizes the ratio");
            let expected = n as f64 / (2.0 * (n as f64 - 1.0));
            assert!(
                (ratio - expected).abs() <= 1e-12,
                "n={n}: {ratio} vs {expected}"
            );
        }
    }

    #[test]
    fn segment_remote_two_plus_one() {
        let m = segment_remote(2, 1.0).unwrap();
        assert_eq!(m.n(), 3);
        assert_eq!(m.labels()[2], "remote");
        assert_eq!(m.get(0, 1), 1.0);
        assert_eq!(m.get(2, 0), 1.0);
        // remote to the far end of the segment
        assert_eq!(m.get(2, 1), 2.0);
    }

    #[test]
    fn segment_remote_rejects_bad_parameters() {
        assert!(matches!(
            segment_remote(1, 1.0),
            Err(GeneratorError::SegmentSize { k: 1 })
        ));
        assert!(matches!(
            segment_remote(5, 0.0),
            Err(GeneratorError::RemoteDistance { .. })
        ));
        assert!(matches!(
            segment_remote(5, -2.0),
            Err(GeneratorError::RemoteDistance { .. })
        ));
        assert!(matches!(
            segment_remote(5, f64::INFINITY),
            Err(GeneratorError::RemoteDistance { .. })
        ));
    }

    #[test]
    fn euclidean_random_is_deterministic() {
        let a = euclidean_random(20, 3, 7).unwrap();
        let b = euclidean_random(20, 3, 7).unwrap();
        assert_eq!(a.matrix().values(), b.matrix().values());
        let c = euclidean_random(20, 3, 8).unwrap();
        assert_ne!(a.matrix().values(), c.matrix().values());
    }

    #[test]
    fn euclidean_random_single_point() {
        let m = euclidean_random(1, 4, 0).unwrap();
        assert_eq!(m.matrix().values(), &[0.0]);
    }

    #[test]
    fn euclidean_random_rejects_bad_parameters() {
        assert!(matches!(
            euclidean_random(0, 2, 1),
            Err(GeneratorError::EuclideanSize { n: 0 })
        ));
        assert!(matches!(
            euclidean_random(3, 0, 1),
            Err(GeneratorError::Dimension { dim: 0 })
        ));
    }

    #[test]
    fn graph_path_distances() {
        let m = graph_metric(&[("a", "b", 1.0), ("b", "c", 1.0)]).unwrap();
        assert_eq!(
            m.labels(),
            &["a".to_string(), "b".to_string(), "c".to_string()]
        );
        assert_eq!(m.get(0, 2), 2.0);
    }

    #[test]
    fn graph_shortcut_beats_heavy_edge() {
        let m = graph_metric(&[("a", "b", 1.0), ("b", "c", 1.0), ("a", "c", 3.0)]).unwrap();
        assert_eq!(m.get(0, 2), 2.0);
    }

    #[test]
    fn graph_duplicate_edges_keep_the_smaller_weight() {
        let m = graph_metric(&[("a", "b", 3.0), ("b", "a", 1.0)]).unwrap();
        assert_eq!(m.get(0, 1), 1.0);
    }

    #[test]
    fn graph_rejects_bad_input() {
        assert!(matches!(
            graph_metric::<&str>(&[]),
            Err(GeneratorError::EmptyGraph)
        ));
        assert!(matches!(
            graph_metric(&[("a", "a", 1.0)]),
            Err(GeneratorError::SelfLoop { .. })
        ));
        assert!(matches!(
            graph_metric(&[("a", "b", 0.0)]),
            Err(GeneratorError::BadEdgeWeight { .. })
        ));
        match graph_metric(&[("a", "b", 1.0), ("c", "d", 1.0)]) {
            Err(GeneratorError::Disconnected { a, b }) => {
                assert_eq!((a.as_str(), b.as_str()), ("a", "c"));
            }
            other => panic!("expected disconnected error, got {other:?}"),
        }
    }

    #[test]
    fn spec_dispatch_matches_direct_calls() {
        let direct = almost_discrete(4).unwrap();
        let via_spec = GeneratorSpec::AlmostDiscrete { n: 4 }.generate().unwrap();
        assert_eq!(direct.matrix(), via_spec.matrix());
        assert_eq!(
            GeneratorSpec::AlmostDiscrete { n: 4 }.family(),
            "almost-discrete"
        );
    }
}
