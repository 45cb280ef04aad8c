//! Metrics and Σ-proximities on finite labeled sets.
//!
//! A *metric* on a finite set assigns every ordered pair a distance with zero
//! diagonal, strictly positive off-diagonal values and the triangle
//! inequality. A *Σ-proximity* is the dual object: a symmetric function whose
//! rows sum to a fixed constant Σ and which satisfies the reversed triangle
//! inequality `σ(x,y) + σ(x,z) − σ(y,z) ≤ σ(x,x)`, strict at `z = y, x ≠ y`.
//! The two families are in bijection: row/grand-mean centering of a metric
//! (plus a `Σ/n` shift) yields a Σ-proximity, and the local formula
//! `d(x,y) = ½(σ(x,x) + σ(y,y)) − σ(x,y)` recovers the metric. The diagonal
//! `σ(x,x)` orders elements by centrality: small diagonal, central element.
//!
//! The crate provides:
//!
//! - [`LabeledSquareMatrix`], the shared substrate for both function classes,
//!   and [`WeightVector`], a finite averaging functional;
//! - tolerance-aware axiom validation ([`validate`]) and the certified
//!   wrapper types [`MetricMatrix`] and [`SigmaProximity`];
//! - the transforms between the two families and roundtrip checks
//!   ([`duality`]);
//! - centrality, the mean-distance bound, the doubly-stochastic class and
//!   closure operations ([`analysis`]);
//! - constructors for extremal and random certified instances
//!   ([`generators`]).
//!
//! Everything is pure and deterministic. The crate is `no_std`-compatible
//! (`alloc` required): disable default features and enable `libm`.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("proxima-core needs either the `std` feature or the `libm` feature");

pub mod analysis;
pub mod duality;
pub mod generators;
mod matrix;
mod metric;
mod numeric;
mod proximity;
pub mod validate;
mod weights;

pub use matrix::{LabeledSquareMatrix, MatrixError};
pub use metric::MetricMatrix;
pub use proximity::{Normalization, SigmaProximity};
pub use validate::{
    Axiom, CertificationError, Check, CheckOutcome, Direction, ValidationKind, ValidationReport,
    Witness, validate_metric, validate_sigma_proximity, validate_sigma_proximity_weighted,
};
pub use weights::{WeightError, WeightVector};

/// Default certification tolerance.
///
/// Equality-type checks pass when the absolute deviation is at most this
/// value; strict inequalities certify only when their margin exceeds it.
/// 1e-9 matches double-precision accumulation error at n ≤ 10⁴.
pub const DEFAULT_TOL: f64 = 1e-9;
