use super::ScatteringError;
use crate::scalar::Real;

/// Real potential on a half-line, identically zero beyond its support.
#[derive(Debug, Clone, PartialEq)]
pub enum Potential<T> {
    Zero,
    /// Non-overlapping `(x_start, x_end, value)` segments; zero elsewhere.
    PiecewiseConstant(Vec<(T, T, T)>),
    /// Samples on a strictly increasing grid, linearly interpolated; zero
    /// outside `[x[0], x[last]]`.
    Sampled {
        x: Vec<T>,
        q: Vec<T>,
    },
}

/// A stretch of the half-line on which `q` is linear.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Piece<T> {
    pub x0: T,
    pub x1: T,
    pub q0: T,
    pub q1: T,
}

impl<T: Real> Piece<T> {
    pub fn at(&self, x: T) -> T {
        if self.q0 == self.q1 {
            return self.q0;
        }
        let t = (x - self.x0) / (self.x1 - self.x0);
        self.q0 + (self.q1 - self.q0) * t
    }
}

/// First-moment estimate `∫(1+x)|q| dx` and how much of it sits near the
/// end of the support.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate<T> {
    pub moment: T,
    /// Share of the moment carried by the last 10% of the support.
    pub tail_mass: T,
    /// Set for sampled data when `tail_mass > 1e-6 · moment`: truncation at
    /// the end of the grid may be visible in the results. Piecewise-constant
    /// potentials are exactly compactly supported and never warn.
    pub tail_warning: bool,
}

impl<T: Real> Potential<T> {
    /// Square well `q = −depth` on `[0, width]`.
    pub fn square_well(depth: T, width: T) -> Self {
        Potential::PiecewiseConstant(vec![(T::zero(), width, -depth)])
    }

    /// Samples `f` on `count` equally spaced nodes of `[0, end]`.
    pub fn sampled_fn(end: T, count: usize, f: impl Fn(T) -> T) -> Self {
        let last = T::from_usize(count.max(2) - 1);
        let x: Vec<T> = (0..count.max(2))
            .map(|i| end * T::from_usize(i) / last)
            .collect();
        let q = x.iter().map(|&x| f(x)).collect();
        Potential::Sampled { x, q }
    }

    /// Point beyond which `q ≡ 0`.
    pub fn support_end(&self) -> T {
        match self {
            Potential::Zero => T::zero(),
            Potential::PiecewiseConstant(segs) => segs.iter().fold(T::zero(), |m, s| m.max(s.1)),
            Potential::Sampled { x, .. } => x.last().copied().unwrap_or(T::zero()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Potential::Zero => true,
            Potential::PiecewiseConstant(segs) => segs.iter().all(|s| s.2 == T::zero()),
            Potential::Sampled { q, .. } => q.iter().all(|v| *v == T::zero()),
        }
    }

    fn check(&self) -> Result<(), ScatteringError> {
        match self {
            Potential::Zero => Ok(()),
            Potential::PiecewiseConstant(segs) => {
                let mut sorted = segs.clone();
                sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
                for (i, &(a, b, v)) in sorted.iter().enumerate() {
                    if !(a.is_finite() && b.is_finite() && v.is_finite()) {
                        return Err(ScatteringError::NonFiniteSample { index: i });
                    }
                    if a < T::zero() {
                        return Err(ScatteringError::NegativeSupport { x: a.as_f64() });
                    }
                    if b <= a {
                        return Err(ScatteringError::InvalidPotential(format!(
                            "segment {i} is empty or reversed"
                        )));
                    }
                    if i > 0 && a < sorted[i - 1].1 {
                        return Err(ScatteringError::InvalidPotential(format!(
                            "segment {i} overlaps its predecessor"
                        )));
                    }
                }
                Ok(())
            }
            Potential::Sampled { x, q } => {
                if x.len() != q.len() {
                    return Err(ScatteringError::InvalidPotential(format!(
                        "{} grid points but {} samples",
                        x.len(),
                        q.len()
                    )));
                }
                if x.len() < 2 {
                    return Err(ScatteringError::InvalidPotential(
                        "need at least two samples".into(),
                    ));
                }
                for (i, (&xi, &qi)) in x.iter().zip(q).enumerate() {
                    if !xi.is_finite() || !qi.is_finite() {
                        return Err(ScatteringError::NonFiniteSample { index: i });
                    }
                }
                if x[0] < T::zero() {
                    return Err(ScatteringError::NegativeSupport { x: x[0].as_f64() });
                }
                if x.windows(2).any(|w| w[1] <= w[0]) {
                    return Err(ScatteringError::InvalidPotential(
                        "grid must be strictly increasing".into(),
                    ));
                }
                Ok(())
            }
        }
    }

    /// Partition of `[0, support_end]` into pieces with linear `q`, gaps
    /// filled with zero pieces. Empty for the zero potential.
    pub fn pieces(&self) -> Vec<Piece<T>> {
        let zero = T::zero();
        let mut out = Vec::new();
        let push_gap = |out: &mut Vec<Piece<T>>, from: T, to: T| {
            if to > from {
                out.push(Piece {
                    x0: from,
                    x1: to,
                    q0: zero,
                    q1: zero,
                });
            }
        };
        match self {
            Potential::Zero => {}
            Potential::PiecewiseConstant(segs) => {
                let mut sorted = segs.clone();
                sorted.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(std::cmp::Ordering::Equal));
                let mut cursor = zero;
                for &(a, b, v) in &sorted {
                    push_gap(&mut out, cursor, a);
                    out.push(Piece {
                        x0: a,
                        x1: b,
                        q0: v,
                        q1: v,
                    });
                    cursor = b;
                }
            }
            Potential::Sampled { x, q } => {
                push_gap(&mut out, zero, x[0]);
                for i in 0..x.len() - 1 {
                    out.push(Piece {
                        x0: x[i],
                        x1: x[i + 1],
                        q0: q[i],
                        q1: q[i + 1],
                    });
                }
            }
        }
        out
    }
}

/// Validates the potential and estimates `∫₀^∞ (1+x)|q(x)| dx`.
///
/// Constant pieces are integrated exactly, sampled data by the trapezoid rule.
pub fn validate_potential<T: Real>(p: &Potential<T>) -> Result<MomentEstimate<T>, ScatteringError> {
    p.check()?;
    let end = p.support_end();
    let tail_start = end * T::lit(0.9);
    let half = T::lit(0.5);
    let mut moment = T::zero();
    let mut tail = T::zero();
    for piece in p.pieces() {
        let contribution = if piece.q0 == piece.q1 {
            let (a, b) = (piece.x0, piece.x1);
            piece.q0.abs() * ((b - a) + half * (b * b - a * a))
        } else {
            half * (piece.x1 - piece.x0)
                * ((T::one() + piece.x0) * piece.q0.abs() + (T::one() + piece.x1) * piece.q1.abs())
        };
        moment += contribution;
        if piece.x1 > tail_start {
            let share = (piece.x1 - piece.x0.max(tail_start)) / (piece.x1 - piece.x0);
            tail += contribution * share;
        }
    }
    Ok(MomentEstimate {
        moment,
        tail_mass: tail,
        tail_warning: matches!(p, Potential::Sampled { .. })
            && moment > T::zero()
            && tail > T::lit(1e-6) * moment,
    })
}
