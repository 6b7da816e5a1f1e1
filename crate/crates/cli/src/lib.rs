//! Configuration-driven driver for star-graph scattering runs.

pub mod config;
pub mod output;
pub mod run;

use std::fmt::Write as _;

use hermsym::boundary::{preset, Preset};
use hermsym::matrix::Tolerance;

/// Preset names with their `U` on `n` edges. `delta` is shown with the given
/// `alpha`, `mixed` with an alternating Dirichlet/Neumann mask.
pub fn describe_presets(n: usize, alpha: f64) -> Result<String, hermsym::boundary::BoundaryError> {
    let tol = Tolerance::default();
    let mut s = String::new();
    for name in Preset::<f64>::NAMES {
        let mask: Vec<bool> = (0..n).map(|i| i % 2 == 0).collect();
        let p = Preset::from_name(name, Some(alpha), Some(mask.clone()))?;
        let label = match &p {
            Preset::Delta { alpha } => format!("delta (alpha = {alpha})"),
            Preset::Mixed { .. } => format!("mixed (mask = {mask:?}, true = dirichlet)"),
            other => other.name().to_string(),
        };
        let bc = preset(&p, n, &tol)?;
        let _ = writeln!(s, "{label}:");
        for i in 0..n {
            let row: Vec<String> = bc
                .u()
                .row(i)
                .iter()
                .map(|z| format!("({:+.6}, {:+.6})", z.re, z.im))
                .collect();
            let _ = writeln!(s, "  {}", row.join(" "));
        }
    }
    Ok(s)
}
