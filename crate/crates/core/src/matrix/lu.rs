use num_complex::Complex;

use super::{CMatrix, MatrixError, Tolerance};
use crate::scalar::{czero, Real};

/// Solution of a linear system together with the 1-norm reciprocal
/// condition number of the coefficient matrix.
#[derive(Debug, Clone)]
pub struct Solution<T> {
    pub x: CMatrix<T>,
    pub rcond: T,
}

struct Lu<T> {
    lu: CMatrix<T>,
    perm: Vec<usize>,
}

impl<T: Real> Lu<T> {
    /// Returns `None` when an exactly zero pivot is met.
    fn factor(m: &CMatrix<T>) -> Option<Self> {
        let n = m.nrows();
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (p, pmax) =
                (k..n)
                    .map(|i| (i, lu[(i, k)].norm()))
                    .fold(
                        (k, T::zero()),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if pmax == T::zero() {
                return None;
            }
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = tmp;
                }
            }
            let pivot = lu[(k, k)];
            for i in (k + 1)..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f.re == T::zero() && f.im == T::zero() {
                    continue;
                }
                for j in (k + 1)..n {
                    let u = lu[(k, j)];
                    lu[(i, j)] -= f * u;
                }
            }
        }
        Some(Lu { lu, perm })
    }

    fn solve_columns(&self, rhs: &CMatrix<T>) -> CMatrix<T> {
        let n = self.lu.nrows();
        let mut x = CMatrix::zeros(n, rhs.ncols());
        let mut y: Vec<Complex<T>> = vec![czero(); n];
        for c in 0..rhs.ncols() {
            for i in 0..n {
                let mut s = rhs[(self.perm[i], c)];
                for j in 0..i {
                    s -= self.lu[(i, j)] * y[j];
                }
                y[i] = s;
            }
            for i in (0..n).rev() {
                let mut s = y[i];
                for j in (i + 1)..n {
                    s -= self.lu[(i, j)] * x[(j, c)];
                }
                x[(i, c)] = s / self.lu[(i, i)];
            }
        }
        x
    }
}

/// Solves `M·X = RHS` by LU with partial pivoting.
///
/// The reciprocal condition number is computed from the explicit inverse,
/// which is affordable at the sizes this crate works with. Fails with
/// `Singular` when it falls below `solve_rcond_floor`.
pub fn solve<T: Real>(
    m: &CMatrix<T>,
    rhs: &CMatrix<T>,
    tol: &Tolerance<T>,
) -> Result<Solution<T>, MatrixError> {
    let n = m.require_square()?;
    if rhs.nrows() != n {
        return Err(MatrixError::DimensionMismatch {
            op: "solve",
            expected: n,
            found: rhs.nrows(),
        });
    }
    if !m.is_finite() || !rhs.is_finite() {
        return Err(MatrixError::NonFinite);
    }
    let lu = Lu::factor(m).ok_or(MatrixError::Singular { rcond: 0.0 })?;
    let inv = lu.solve_columns(&CMatrix::identity(n));
    let rcond = reciprocal_condition(m, &inv);
    if !(rcond >= tol.solve_rcond_floor) {
        return Err(MatrixError::Singular {
            rcond: rcond.as_f64(),
        });
    }
    Ok(Solution {
        x: lu.solve_columns(rhs),
        rcond,
    })
}

/// Inverse of `M` with its reciprocal condition number.
pub fn inverse<T: Real>(m: &CMatrix<T>, tol: &Tolerance<T>) -> Result<Solution<T>, MatrixError> {
    solve(m, &CMatrix::identity(m.nrows()), tol)
}

/// Determinant via LU with partial pivoting (exactly zero for a zero pivot).
pub fn determinant<T: Real>(m: &CMatrix<T>) -> Result<Complex<T>, MatrixError> {
    let n = m.require_square()?;
    let Some(lu) = Lu::factor(m) else {
        return Ok(czero());
    };
    let mut det = Complex::new(T::one(), T::zero());
    for i in 0..n {
        det = det * lu.lu[(i, i)];
    }
    // parity of the row permutation
    let mut seen = vec![false; n];
    let mut odd = false;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = lu.perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    Ok(if odd { -det } else { det })
}

fn reciprocal_condition<T: Real>(m: &CMatrix<T>, inv: &CMatrix<T>) -> T {
    let a = m.norm_one();
    let b = inv.norm_one();
    if a == T::zero() || !b.is_finite() {
        return T::zero();
    }
    T::one() / (a * b)
}
