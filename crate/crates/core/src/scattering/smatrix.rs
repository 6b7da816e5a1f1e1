use num_complex::Complex;

use super::jost::{jost_origin, JostOrigin};
use super::{ScatteringError, StarGraph};
use crate::boundary::{projection_pair, BoundaryConditions, BoundaryError};
use crate::matrix::{inverse, solve, CMatrix, MatrixError, Tolerance};
use crate::scalar::{cplx, Real};

/// Scattering data at one wavenumber.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringResult<T> {
    pub k: T,
    pub s: CMatrix<T>,
    pub m_plus: CMatrix<T>,
    pub m_minus: CMatrix<T>,
    /// `‖S†S − 𝕀‖`.
    pub unitarity_defect: T,
    pub m_minus_rcond: T,
}

/// `M± = ±(1/2ik)[𝔉±† B − 𝔉±,x† A]` with diagonal Jost matrices.
///
/// For real `k` the involution `†` is the plain conjugate transpose, and
/// `𝔉₋ = conj 𝔉₊`.
pub fn m_matrices<T: Real>(
    jost: &JostOrigin<T>,
    bc: &BoundaryConditions<T>,
) -> Result<(CMatrix<T>, CMatrix<T>), ScatteringError> {
    let n = bc.n();
    if jost.n() != n {
        return Err(ScatteringError::EdgeCount {
            expected: n,
            found: jost.n(),
        });
    }
    let (a, b) = (bc.a(), bc.b());
    let c = Complex::new(T::one(), T::zero()) / cplx(T::zero(), T::lit(2.0) * jost.k);
    let (f, fx) = (&jost.f_plus, &jost.f_plus_x);
    let m_plus = CMatrix::from_fn(n, n, |i, j| {
        c * (f[i].conj() * b[(i, j)] - fx[i].conj() * a[(i, j)])
    });
    let m_minus = CMatrix::from_fn(n, n, |i, j| -c * (f[i] * b[(i, j)] - fx[i] * a[(i, j)]));
    Ok((m_plus, m_minus))
}

/// `S = M₊ M₋^{-1}`, with the reciprocal condition number of `M₋`.
pub fn scattering_matrix<T: Real>(
    m_plus: &CMatrix<T>,
    m_minus: &CMatrix<T>,
    tol: &Tolerance<T>,
) -> Result<(CMatrix<T>, T), ScatteringError> {
    let n = m_minus.require_square()?;
    if m_plus.nrows() != n || m_plus.ncols() != n {
        return Err(ScatteringError::DimensionMismatch {
            expected: n,
            found: m_plus.nrows(),
        });
    }
    let inv = inverse(m_minus, tol)?;
    Ok((m_plus * &inv.x, inv.rcond))
}

/// Full result at the wavenumber of `jost`.
pub fn scatter_from_jost<T: Real>(
    jost: &JostOrigin<T>,
    bc: &BoundaryConditions<T>,
    tol: &Tolerance<T>,
) -> Result<ScatteringResult<T>, ScatteringError> {
    let (m_plus, m_minus) = m_matrices(jost, bc)?;
    let (s, rcond) = scattering_matrix(&m_plus, &m_minus, tol).map_err(|e| match e {
        ScatteringError::Matrix(MatrixError::Singular { rcond }) => ScatteringError::Singular {
            k: jost.k.as_f64(),
            rcond,
        },
        other => other,
    })?;
    Ok(ScatteringResult {
        k: jost.k,
        unitarity_defect: s.unitary_defect(),
        s,
        m_plus,
        m_minus,
        m_minus_rcond: rcond,
    })
}

pub fn scattering_at<T: Real>(
    graph: &StarGraph<T>,
    bc: &BoundaryConditions<T>,
    k: T,
    tol: &Tolerance<T>,
) -> Result<ScatteringResult<T>, ScatteringError> {
    if graph.n() != bc.n() {
        return Err(ScatteringError::EdgeCount {
            expected: bc.n(),
            found: graph.n(),
        });
    }
    scatter_from_jost(&jost_origin(graph, k)?, bc, tol)
}

/// Projection form for hermitian `U`:
/// `S = −[i𝔉₋P⊥ + 𝔉₋,x P][i𝔉₊P⊥ + 𝔉₊,x P]^{-1}`.
pub fn hermitian_case_matrix<T: Real>(
    bc: &BoundaryConditions<T>,
    jost: &JostOrigin<T>,
    tol: &Tolerance<T>,
) -> Result<CMatrix<T>, ScatteringError> {
    let pp = projection_pair(bc).map_err(|e| match e {
        BoundaryError::NotHermitian { .. } => ScatteringError::NotHermitian,
        other => other.into(),
    })?;
    let n = bc.n();
    if jost.n() != n {
        return Err(ScatteringError::EdgeCount {
            expected: n,
            found: jost.n(),
        });
    }
    let i = cplx(T::zero(), T::one());
    let (fm, fmx) = jost.f_minus();
    let build = |f: &[Complex<T>], fx: &[Complex<T>]| {
        CMatrix::from_fn(n, n, |r, c| {
            i * f[r] * pp.p_perp[(r, c)] + fx[r] * pp.p[(r, c)]
        })
    };
    let num = build(&fm, &fmx);
    let den = build(&jost.f_plus, &jost.f_plus_x);
    // S·D = −N  ⇔  D†S† = −N†
    let st = solve(&den.adjoint(), &num.adjoint(), tol).map_err(|e| match e {
        MatrixError::Singular { rcond } => ScatteringError::Singular {
            k: jost.k.as_f64(),
            rcond,
        },
        other => other.into(),
    })?;
    Ok(-&st.x.adjoint())
}

/// `W{Y₁, Y₂} = Y₁†Y₂′ − Y₁′†Y₂`.
pub fn wronskian<T: Real>(
    y1: &CMatrix<T>,
    y1_x: &CMatrix<T>,
    y2: &CMatrix<T>,
    y2_x: &CMatrix<T>,
) -> Result<CMatrix<T>, ScatteringError> {
    let rows = y1.nrows();
    for m in [y1_x, y2, y2_x] {
        if m.nrows() != rows {
            return Err(ScatteringError::DimensionMismatch {
                expected: rows,
                found: m.nrows(),
            });
        }
    }
    if y1.ncols() != y1_x.ncols() || y2.ncols() != y2_x.ncols() {
        return Err(ScatteringError::DimensionMismatch {
            expected: y1.ncols(),
            found: y1_x.ncols(),
        });
    }
    Ok(&(&y1.adjoint() * y2_x) - &(&y1_x.adjoint() * y2))
}

/// Closed form for zero potential:
/// `S(k) = [(U−𝕀) + k(U+𝕀)]·[k(U+𝕀) − (U−𝕀)]^{-1}`.
pub fn zero_potential_s<T: Real>(
    u: &CMatrix<T>,
    k: T,
    tol: &Tolerance<T>,
) -> Result<CMatrix<T>, ScatteringError> {
    let n = u.require_square()?;
    let id = CMatrix::identity(n);
    let up = (u + &id).scale_real(k);
    let um = u - &id;
    let num = &um + &up;
    let den = &up - &um;
    // S·D = N  ⇔  D†S† = N†
    let st = solve(&den.adjoint(), &num.adjoint(), tol)?;
    Ok(st.x.adjoint())
}
