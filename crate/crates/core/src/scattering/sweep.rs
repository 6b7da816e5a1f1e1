use rayon::prelude::*;

use super::jost::{jost_origin, JostOrigin, K_MIN};
use super::smatrix::{scatter_from_jost, ScatteringResult};
use super::{ScatteringError, StarGraph};
use crate::boundary::BoundaryConditions;
use crate::matrix::{CMatrix, Tolerance};
use crate::scalar::Real;

/// Wavenumbers at which the high-energy decay is sampled.
pub const ASYMPTOTIC_CHECKPOINTS: [f64; 3] = [10.0, 100.0, 1000.0];

/// Below this a decay value counts as zero.
const NEGLIGIBLE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

/// `count` wavenumbers between `k_min` and `k_max`, inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KGrid<T> {
    pub k_min: T,
    pub k_max: T,
    pub count: usize,
    pub spacing: Spacing,
}

impl<T: Real> KGrid<T> {
    pub fn validate(&self) -> Result<(), ScatteringError> {
        let bad = |field, reason: &str| {
            Err(ScatteringError::InvalidGrid {
                field,
                reason: reason.to_string(),
            })
        };
        if !(self.k_min > T::zero()) || !self.k_min.is_finite() {
            return bad("k_min", "must be > 0");
        }
        if self.k_min < T::lit(K_MIN) {
            return bad("k_min", "must be >= 1e-3");
        }
        if !self.k_max.is_finite() || self.k_max < self.k_min {
            return bad("k_max", "must be finite and >= k_min");
        }
        if self.count == 0 {
            return bad("count", "must be >= 1");
        }
        Ok(())
    }

    pub fn points(&self) -> Result<Vec<T>, ScatteringError> {
        self.validate()?;
        if self.count == 1 {
            return Ok(vec![self.k_min]);
        }
        let last = T::from_usize(self.count - 1);
        let pts = (0..self.count).map(|i| {
            let t = T::from_usize(i) / last;
            match self.spacing {
                Spacing::Linear => self.k_min + (self.k_max - self.k_min) * t,
                Spacing::Log => (self.k_min.ln() + (self.k_max.ln() - self.k_min.ln()) * t).exp(),
            }
        });
        let mut v: Vec<T> = pts.collect();
        // pin the endpoints against rounding
        v[0] = self.k_min;
        v[self.count - 1] = self.k_max;
        Ok(v)
    }
}

/// Outcome at one grid point; failures are recorded, not propagated.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint<T> {
    pub k: T,
    pub outcome: Result<ScatteringResult<T>, ScatteringError>,
}

/// Jost data for every `k`, evaluated in parallel, returned in input order.
pub fn jost_sweep<T: Real>(
    graph: &StarGraph<T>,
    ks: &[T],
) -> Vec<Result<JostOrigin<T>, ScatteringError>> {
    ks.par_iter().map(|&k| jost_origin(graph, k)).collect()
}

/// `S(k)` over the grid. Each point is computed independently, so the result
/// is identical to a sequential evaluation.
pub fn scattering_sweep<T: Real>(
    graph: &StarGraph<T>,
    bc: &BoundaryConditions<T>,
    ks: &[T],
    tol: &Tolerance<T>,
) -> Result<Vec<SweepPoint<T>>, ScatteringError> {
    if graph.n() != bc.n() {
        return Err(ScatteringError::EdgeCount {
            expected: bc.n(),
            found: graph.n(),
        });
    }
    Ok(ks
        .par_iter()
        .map(|&k| SweepPoint {
            k,
            outcome: jost_origin(graph, k).and_then(|j| scatter_from_jost(&j, bc, tol)),
        })
        .collect())
}

/// Decay of `‖S(k) − Û‖` at high energy.
#[derive(Debug, Clone, PartialEq)]
pub struct DecayReport<T> {
    /// `(k, ‖S(k) − Û‖)` for every result with `k ≥ 10`, in input order.
    pub table: Vec<(T, T)>,
    /// The values at the checkpoints `k = 10, 10², 10³`.
    pub checkpoints: Vec<(T, T)>,
    /// Strictly decreasing over the checkpoints, where values at or below
    /// `1e-12` count as already decayed.
    pub decreasing: bool,
    /// `C = max k·‖S(k) − Û‖` over the table.
    pub fitted_c: T,
    /// Whether the last checkpoint satisfies `‖S − Û‖ ≤ C/k`.
    pub within_bound: bool,
}

impl<T: Real> DecayReport<T> {
    pub fn passed(&self) -> bool {
        self.decreasing && self.within_bound
    }
}

/// Compares sweep results with the limit `Û`. Needs a result at each of the
/// checkpoints (matched to 1e-9 relative).
pub fn asymptotic_check<T: Real>(
    results: &[ScatteringResult<T>],
    uhat: &CMatrix<T>,
) -> Result<DecayReport<T>, ScatteringError> {
    let ten = T::lit(ASYMPTOTIC_CHECKPOINTS[0]);
    let table: Vec<(T, T)> = results
        .iter()
        .filter(|r| r.k >= ten * (T::one() - T::lit(1e-9)))
        .map(|r| (r.k, r.s.distance(uhat)))
        .collect();
    let mut checkpoints = Vec::with_capacity(ASYMPTOTIC_CHECKPOINTS.len());
    for c in ASYMPTOTIC_CHECKPOINTS {
        let target = T::lit(c);
        let hit = table
            .iter()
            .find(|(k, _)| (*k - target).abs() <= T::lit(1e-9) * target)
            .ok_or(ScatteringError::InsufficientRange { needed: c })?;
        checkpoints.push(*hit);
    }
    let negligible = T::lit(NEGLIGIBLE);
    let decreasing = checkpoints
        .windows(2)
        .all(|w| w[1].1 < w[0].1 || w[1].1 <= negligible);
    let fitted_c = table.iter().fold(T::zero(), |m, (k, d)| m.max(*k * *d));
    let (k_last, d_last) = checkpoints[checkpoints.len() - 1];
    let within_bound = d_last <= negligible || d_last * k_last <= fitted_c;
    Ok(DecayReport {
        table,
        checkpoints,
        decreasing,
        fitted_c,
        within_bound,
    })
}
