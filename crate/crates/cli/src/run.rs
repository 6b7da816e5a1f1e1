//! Pipeline orchestration and the plain-text report.

use std::fmt::Write as _;
use std::time::Instant;

use hermsym::boundary::{spectral_asymptotic_map, zero_potential_bound_states, BoundState};
use hermsym::matrix::{CMatrix, Tolerance};
use hermsym::scattering::{
    asymptotic_check, scattering_sweep, DecayReport, ScatteringError, ScatteringResult,
    ASYMPTOTIC_CHECKPOINTS,
};
use thiserror::Error;

use crate::config::RunConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_CHECK: i32 = 3;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("numerical failure: {0}")]
    Numerical(#[from] ScatteringError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// The unitarity defect exceeds `checks.unitarity_tol`.
    Defect,
    Failed,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Defect => "defect",
            Status::Failed => "failed",
        }
    }
}

/// One output row.
#[derive(Debug, Clone)]
pub struct Row {
    pub k: f64,
    pub result: Option<ScatteringResult<f64>>,
    pub status: Status,
}

#[derive(Debug, Clone)]
pub enum Asymptotics {
    Report {
        uhat: CMatrix<f64>,
        decay: DecayReport<f64>,
    },
    Unavailable(String),
}

impl Asymptotics {
    pub fn passed(&self) -> bool {
        matches!(self, Asymptotics::Report { decay, .. } if decay.passed())
    }
}

#[derive(Debug, Clone)]
pub enum BoundStates {
    Found(Vec<BoundState<f64>>),
    Skipped(String),
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub config_echo: String,
    pub points: usize,
    pub max_defect: f64,
    pub worst_k: Option<f64>,
    pub unitarity_tol: f64,
    /// `(k, reason)` for points that could not be computed.
    pub failed: Vec<(f64, String)>,
    /// Points whose defect exceeds the tolerance.
    pub exceeded: Vec<f64>,
    pub asymptotics: Option<Asymptotics>,
    pub bound_states: Option<BoundStates>,
    pub tail_warnings: Vec<usize>,
    pub wall_time_s: f64,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if !self.failed.is_empty() {
            EXIT_NUMERICAL
        } else if !self.exceeded.is_empty()
            || self.asymptotics.as_ref().is_some_and(|a| !a.passed())
        {
            EXIT_CHECK
        } else {
            EXIT_OK
        }
    }

    /// One-line reason for a nonzero exit code.
    pub fn diagnostic(&self) -> Option<String> {
        match self.exit_code() {
            EXIT_NUMERICAL => {
                let (k, why) = &self.failed[0];
                Some(format!(
                    "{} k-point(s) failed; first at k = {k}: {why}",
                    self.failed.len()
                ))
            }
            EXIT_CHECK if !self.exceeded.is_empty() => Some(format!(
                "unitarity defect {:.3e} exceeds tolerance {:.3e}; worst k = {}",
                self.max_defect,
                self.unitarity_tol,
                self.worst_k.unwrap_or(f64::NAN)
            )),
            EXIT_CHECK => Some("asymptotic check failed".to_string()),
            _ => None,
        }
    }

    /// The report as text; the wall time line is optional so that reports
    /// can be compared across runs.
    pub fn render(&self, with_wall_time: bool) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "hermsym run report");
        let _ = writeln!(s, "config (defaults applied):");
        for line in self.config_echo.lines() {
            let _ = writeln!(s, "  {line}");
        }
        for e in &self.tail_warnings {
            let _ = writeln!(
                s,
                "warning: potential on edge {e} is truncated with visible tail mass"
            );
        }
        let _ = writeln!(
            s,
            "k-points: {} ({} failed)",
            self.points,
            self.failed.len()
        );
        for (k, why) in &self.failed {
            let _ = writeln!(s, "  failed k = {k}: {why}");
        }
        match self.worst_k {
            Some(k) => {
                let _ = writeln!(
                    s,
                    "max unitarity defect: {:.6e} at k = {k}",
                    self.max_defect
                );
            }
            None => {
                let _ = writeln!(s, "max unitarity defect: n/a");
            }
        }
        let verdict = if self.exceeded.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        let _ = writeln!(
            s,
            "unitarity check (tol {:.3e}): {verdict} ({} point(s) above tolerance)",
            self.unitarity_tol,
            self.exceeded.len()
        );
        match &self.asymptotics {
            None => {
                let _ = writeln!(s, "asymptotics: not requested");
            }
            Some(Asymptotics::Unavailable(why)) => {
                let _ = writeln!(s, "asymptotics: FAIL ({why})");
            }
            Some(Asymptotics::Report { uhat, decay }) => {
                let _ = writeln!(
                    s,
                    "asymptotics: {}",
                    if decay.passed() { "PASS" } else { "FAIL" }
                );
                let _ = writeln!(s, "  limit matrix (re, im), row-major:");
                for i in 0..uhat.nrows() {
                    let row: Vec<String> = uhat
                        .row(i)
                        .iter()
                        .map(|z| format!("({:+.6}, {:+.6})", z.re, z.im))
                        .collect();
                    let _ = writeln!(s, "    {}", row.join(" "));
                }
                let _ = writeln!(
                    s,
                    "  {:>14}  {:>14}  {:>14}",
                    "k", "|S - Uhat|", "k*|S - Uhat|"
                );
                for (k, d) in &decay.table {
                    let _ = writeln!(s, "  {k:>14.6e}  {d:>14.6e}  {:>14.6e}", k * d);
                }
                let _ = writeln!(
                    s,
                    "  decreasing over k = 10, 100, 1000: {}",
                    decay.decreasing
                );
                let _ = writeln!(
                    s,
                    "  fitted C: {:.6e}; within C/k at k = 1000: {}",
                    decay.fitted_c, decay.within_bound
                );
            }
        }
        match &self.bound_states {
            None => {
                let _ = writeln!(s, "bound states: not requested");
            }
            Some(BoundStates::Skipped(why)) => {
                let _ = writeln!(s, "bound states: skipped ({why})");
            }
            Some(BoundStates::Found(list)) if list.is_empty() => {
                let _ = writeln!(s, "bound states: none");
            }
            Some(BoundStates::Found(list)) => {
                let _ = writeln!(s, "bound states: {}", list.len());
                for b in list {
                    let _ = writeln!(
                        s,
                        "  kappa = {:.12}, lambda = {:.12}, multiplicity {}",
                        b.kappa, b.energy, b.multiplicity
                    );
                }
            }
        }
        if with_wall_time {
            let _ = writeln!(s, "wall time: {:.3} s", self.wall_time_s);
        }
        s
    }
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub rows: Vec<Row>,
    pub report: RunReport,
}

/// Runs the sweep and every enabled check.
pub fn run(config: &RunConfig) -> Result<RunOutcome, RunError> {
    let start = Instant::now();
    let tol = Tolerance::default();
    let utol = config.file.checks.unitarity_tol;
    let ks = config.kgrid.points()?;
    let sweep = scattering_sweep(&config.graph, &config.bc, &ks, &tol)?;

    let mut rows = Vec::with_capacity(sweep.len());
    let mut failed = Vec::new();
    let mut exceeded = Vec::new();
    let mut max_defect = f64::NEG_INFINITY;
    let mut worst_k = None;
    for p in sweep {
        match p.outcome {
            Ok(r) => {
                if r.unitarity_defect > max_defect {
                    max_defect = r.unitarity_defect;
                    worst_k = Some(r.k);
                }
                let status = if r.unitarity_defect <= utol {
                    Status::Ok
                } else {
                    exceeded.push(r.k);
                    Status::Defect
                };
                rows.push(Row {
                    k: p.k,
                    result: Some(r),
                    status,
                });
            }
            Err(e) => {
                failed.push((p.k, e.to_string()));
                rows.push(Row {
                    k: p.k,
                    result: None,
                    status: Status::Failed,
                });
            }
        }
    }

    let asymptotics = config
        .file
        .checks
        .run_asymptotics
        .then(|| asymptotics(config, &rows, &tol));
    let bound_states = config.file.checks.run_bound_states.then(|| {
        if !config.all_zero_potential() {
            return BoundStates::Skipped("only available for zero potential".into());
        }
        match zero_potential_bound_states(config.bc.u(), &tol) {
            Ok(list) => BoundStates::Found(list),
            Err(e) => BoundStates::Skipped(e.to_string()),
        }
    });

    let report = RunReport {
        config_echo: config.echo(),
        points: rows.len(),
        max_defect: if worst_k.is_some() {
            max_defect
        } else {
            f64::NAN
        },
        worst_k,
        unitarity_tol: utol,
        failed,
        exceeded,
        asymptotics,
        bound_states,
        tail_warnings: config.tail_warnings.clone(),
        wall_time_s: start.elapsed().as_secs_f64(),
    };
    Ok(RunOutcome { rows, report })
}

/// Evaluates the checkpoints separately and merges them with the grid
/// points at `k ≥ 10`.
fn asymptotics(config: &RunConfig, rows: &[Row], tol: &Tolerance<f64>) -> Asymptotics {
    let uhat = match spectral_asymptotic_map(config.bc.u(), tol) {
        Ok(u) => u,
        Err(e) => return Asymptotics::Unavailable(e.to_string()),
    };
    let sweep = match scattering_sweep(&config.graph, &config.bc, &ASYMPTOTIC_CHECKPOINTS, tol) {
        Ok(s) => s,
        Err(e) => return Asymptotics::Unavailable(e.to_string()),
    };
    let mut results = Vec::new();
    for p in sweep {
        match p.outcome {
            Ok(r) => results.push(r),
            Err(e) => return Asymptotics::Unavailable(format!("checkpoint k = {}: {e}", p.k)),
        }
    }
    results.extend(
        rows.iter()
            .filter_map(|r| r.result.clone())
            .filter(|r| r.k >= ASYMPTOTIC_CHECKPOINTS[0] && !ASYMPTOTIC_CHECKPOINTS.contains(&r.k)),
    );
    results.sort_by(|a, b| a.k.total_cmp(&b.k));
    match asymptotic_check(&results, &uhat) {
        Ok(decay) => Asymptotics::Report { uhat, decay },
        Err(e) => Asymptotics::Unavailable(e.to_string()),
    }
}
