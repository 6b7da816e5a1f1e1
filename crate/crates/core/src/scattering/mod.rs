//! Scattering on a star graph: `n` half-lines joined at one vertex, a real
//! potential of compact support on each edge, and vertex conditions given by
//! a unitary `U`.
//!
//! For real `k` the Jost solutions `f₊ ~ e^{ikx}` are integrated backwards
//! from the end of the support, the vertex conditions are expanded in the
//! Jost basis (`M±`), and `S(k) = M₊ M₋^{-1}`.

mod jost;
mod potential;
mod smatrix;
mod sweep;

use thiserror::Error;

use crate::boundary::BoundaryError;
use crate::matrix::MatrixError;
use crate::scalar::Real;

pub use jost::{jost_at_origin, jost_origin, propagate, JostOrigin, JostValue, K_MIN};
pub use potential::{validate_potential, MomentEstimate, Piece, Potential};
pub use smatrix::{
    hermitian_case_matrix, m_matrices, scatter_from_jost, scattering_at, scattering_matrix,
    wronskian, zero_potential_s, ScatteringResult,
};
pub use sweep::{
    asymptotic_check, jost_sweep, scattering_sweep, DecayReport, KGrid, Spacing, SweepPoint,
    ASYMPTOTIC_CHECKPOINTS,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScatteringError {
    #[error(transparent)]
    Boundary(#[from] BoundaryError),
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("potential sample {index} is not finite")]
    NonFiniteSample { index: usize },
    #[error("potential support starts at negative x = {x}")]
    NegativeSupport { x: f64 },
    #[error("invalid potential: {0}")]
    InvalidPotential(String),
    #[error("a star graph needs at least one edge")]
    EmptyGraph,
    #[error("edge count mismatch: expected {expected}, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("|k| = {k:e} is below the minimum {k_min:e}")]
    KTooSmall { k: f64, k_min: f64 },
    #[error("Jost integration at k = {k} did not converge after {refinements} refinements (relative change {change:.3e})")]
    IntegrationFailure {
        k: f64,
        refinements: usize,
        change: f64,
    },
    #[error("Jost data evaluated at different wavenumbers")]
    KMismatch,
    #[error("M- is singular at k = {k} (rcond {rcond:.3e})")]
    Singular { k: f64, rcond: f64 },
    #[error("vertex conditions are not hermitian")]
    NotHermitian,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid k grid ({field}): {reason}")]
    InvalidGrid { field: &'static str, reason: String },
    #[error("asymptotic check needs a result at k = {needed}")]
    InsufficientRange { needed: f64 },
}

/// A star graph with one potential per edge.
#[derive(Debug, Clone, PartialEq)]
pub struct StarGraph<T> {
    potentials: Vec<Potential<T>>,
}

impl<T: Real> StarGraph<T> {
    pub fn new(potentials: Vec<Potential<T>>) -> Result<Self, ScatteringError> {
        if potentials.is_empty() {
            return Err(ScatteringError::EmptyGraph);
        }
        for p in &potentials {
            validate_potential(p)?;
        }
        Ok(StarGraph { potentials })
    }

    /// The same potential on each of `n` edges.
    pub fn uniform(n: usize, potential: Potential<T>) -> Result<Self, ScatteringError> {
        Self::new(vec![potential; n])
    }

    pub fn n(&self) -> usize {
        self.potentials.len()
    }

    pub fn potentials(&self) -> &[Potential<T>] {
        &self.potentials
    }
}
