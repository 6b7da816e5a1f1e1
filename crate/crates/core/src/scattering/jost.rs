use num_complex::Complex;

use super::potential::{Piece, Potential};
use super::{ScatteringError, StarGraph};
use crate::scalar::{cplx, Real};

/// Smallest admissible `|k|`.
pub const K_MIN: f64 = 1e-3;

const MAX_REFINEMENTS: usize = 16;
const MAX_STEPS: usize = 1 << 25;

/// Value and derivative of `f₊(·, k)` at the vertex for one edge.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JostValue<T> {
    pub f: Complex<T>,
    pub f_x: Complex<T>,
    /// Relative change between the last two refinements.
    pub estimated_error: T,
}

impl<T: Real> JostValue<T> {
    /// `f₋ = conj(f₊)` for real `k` and real `q`.
    pub fn minus(&self) -> (Complex<T>, Complex<T>) {
        (self.f.conj(), self.f_x.conj())
    }
}

/// Jost data at the vertex for every edge of a graph, at a single `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct JostOrigin<T> {
    pub k: T,
    pub f_plus: Vec<Complex<T>>,
    pub f_plus_x: Vec<Complex<T>>,
    pub estimated_error: T,
}

impl<T: Real> JostOrigin<T> {
    pub fn n(&self) -> usize {
        self.f_plus.len()
    }

    /// `(𝔉₋, 𝔉₋,x)` on the diagonal, as per-edge vectors.
    pub fn f_minus(&self) -> (Vec<Complex<T>>, Vec<Complex<T>>) {
        (
            self.f_plus.iter().map(|z| z.conj()).collect(),
            self.f_plus_x.iter().map(|z| z.conj()).collect(),
        )
    }
}

type State<T> = (Complex<T>, Complex<T>);

fn check_k<T: Real>(k: T) -> Result<(), ScatteringError> {
    if !k.is_finite() || k.abs() < T::lit(K_MIN) {
        return Err(ScatteringError::KTooSmall {
            k: k.as_f64(),
            k_min: K_MIN,
        });
    }
    Ok(())
}

fn convergence_tol<T: Real>() -> T {
    T::lit(1e-9).max(T::lit(100.0) * T::epsilon())
}

/// One RK4 pass over all pieces with `m_i · 2^level` steps on piece `i`.
fn rk4_pass<T: Real>(
    pieces: &[Piece<T>],
    base_steps: &[usize],
    level: u32,
    k2: T,
    y: State<T>,
    backward: bool,
) -> State<T> {
    let two = T::lit(2.0);
    let six = T::lit(6.0);
    let half = T::lit(0.5);
    let deriv =
        |piece: &Piece<T>, x: T, (f, g): State<T>| -> State<T> { (g, f * (piece.at(x) - k2)) };
    let mut y = y;
    let order: Box<dyn Iterator<Item = usize>> = if backward {
        Box::new((0..pieces.len()).rev())
    } else {
        Box::new(0..pieces.len())
    };
    for i in order {
        let piece = &pieces[i];
        let m = base_steps[i] << level;
        let len = piece.x1 - piece.x0;
        let h = if backward { -len } else { len } / T::from_usize(m);
        let start = if backward { piece.x1 } else { piece.x0 };
        for s in 0..m {
            let x = start + h * T::from_usize(s);
            let hc = Complex::new(h, T::zero());
            let k1 = deriv(piece, x, y);
            let k2_ = deriv(
                piece,
                x + half * h,
                (y.0 + k1.0 * hc * half, y.1 + k1.1 * hc * half),
            );
            let k3 = deriv(
                piece,
                x + half * h,
                (y.0 + k2_.0 * hc * half, y.1 + k2_.1 * hc * half),
            );
            let k4 = deriv(piece, x + h, (y.0 + k3.0 * hc, y.1 + k3.1 * hc));
            let w = hc / six;
            y = (
                y.0 + w * (k1.0 + k2_.0 * two + k3.0 * two + k4.0),
                y.1 + w * (k1.1 + k2_.1 * two + k3.1 * two + k4.1),
            );
        }
    }
    y
}

/// Integrates `−f″ + q f = k² f` across `[0, support_end]` with RK4, halving
/// the step until successive results agree to `1e-9` relative.
fn integrate<T: Real>(
    p: &Potential<T>,
    k: T,
    y0: State<T>,
    backward: bool,
) -> Result<(State<T>, T), ScatteringError> {
    let pieces = p.pieces();
    if pieces.is_empty() {
        return Ok((y0, T::zero()));
    }
    let h0 = T::lit(0.01).min(T::lit(0.1) / k.abs());
    let base: Vec<usize> = pieces
        .iter()
        .map(|pc| {
            let m = ((pc.x1 - pc.x0) / h0)
                .ceil()
                .to_usize()
                .unwrap_or(usize::MAX);
            m.max(1)
        })
        .collect();
    let total: usize = base.iter().fold(0usize, |a, b| a.saturating_add(*b));
    let k2 = k * k;
    let ka = k.abs();
    let tol = convergence_tol::<T>();
    let mut prev = rk4_pass(&pieces, &base, 0, k2, y0, backward);
    let mut change = T::infinity();
    for level in 1..=MAX_REFINEMENTS as u32 {
        if total.saturating_mul(1 << level) > MAX_STEPS {
            break;
        }
        let next = rk4_pass(&pieces, &base, level, k2, y0, backward);
        let num = (next.0 - prev.0).norm() * ka + (next.1 - prev.1).norm();
        let den = next.0.norm() * ka + next.1.norm();
        change = if den > T::zero() { num / den } else { num };
        prev = next;
        if change < tol {
            return Ok((prev, change));
        }
    }
    Err(ScatteringError::IntegrationFailure {
        k: k.as_f64(),
        refinements: MAX_REFINEMENTS,
        change: change.as_f64(),
    })
}

/// `f₊(0, k)` and `f₊′(0, k)`, starting from the exact data
/// `f = e^{ikX}`, `f′ = ik e^{ikX}` at the end of the support `X`.
pub fn jost_at_origin<T: Real>(p: &Potential<T>, k: T) -> Result<JostValue<T>, ScatteringError> {
    check_k(k)?;
    let x_end = p.support_end();
    let phase = Complex::new(T::zero(), k * x_end).exp();
    let ik = cplx(T::zero(), k);
    let ((f, f_x), err) = integrate(p, k, (phase, ik * phase), true)?;
    Ok(JostValue {
        f,
        f_x,
        estimated_error: err,
    })
}

/// Carries a solution with data `(f, f′)` at the vertex forward to the end of
/// the support.
pub fn propagate<T: Real>(
    p: &Potential<T>,
    k: T,
    f: Complex<T>,
    f_x: Complex<T>,
) -> Result<(Complex<T>, Complex<T>), ScatteringError> {
    check_k(k)?;
    Ok(integrate(p, k, (f, f_x), false)?.0)
}

/// Jost data for all edges at one `k`. Edges that share a potential are
/// integrated once.
pub fn jost_origin<T: Real>(graph: &StarGraph<T>, k: T) -> Result<JostOrigin<T>, ScatteringError> {
    let pots = graph.potentials();
    let mut values: Vec<JostValue<T>> = Vec::with_capacity(pots.len());
    for (i, p) in pots.iter().enumerate() {
        let v = match pots[..i].iter().position(|q| q == p) {
            Some(j) => values[j],
            None => jost_at_origin(p, k)?,
        };
        values.push(v);
    }
    Ok(JostOrigin {
        k,
        f_plus: values.iter().map(|v| v.f).collect(),
        f_plus_x: values.iter().map(|v| v.f_x).collect(),
        estimated_error: values
            .iter()
            .fold(T::zero(), |m, v| m.max(v.estimated_error)),
    })
}
