use num_complex::Complex;

use super::{require_unitary, CMatrix, MatrixError, Tolerance};
use crate::scalar::{ci, creal, Real};

const MAX_SWEEPS: usize = 64;

/// Result of [`hermitian_eig`]: `M = V·diag(values)·V†`, values ascending.
#[derive(Debug, Clone)]
pub struct HermitianEig<T> {
    pub values: Vec<T>,
    pub vectors: CMatrix<T>,
}

impl<T: Real> HermitianEig<T> {
    /// `V·diag(values)·V†`.
    pub fn reconstruct(&self) -> CMatrix<T> {
        let d: Vec<T> = self.values.clone();
        &(&self.vectors * &CMatrix::from_real_diagonal(&d)) * &self.vectors.adjoint()
    }
}

/// Eigendecomposition of a hermitian matrix by cyclic Jacobi rotations.
///
/// The sweep order is fixed (row-major over the strict upper triangle), so the
/// result is reproducible bit for bit. The input is symmetrized as
/// `(M + M†)/2` after the hermiticity check.
pub fn hermitian_eig<T: Real>(
    m: &CMatrix<T>,
    tol: &Tolerance<T>,
) -> Result<HermitianEig<T>, MatrixError> {
    let n = m.require_square()?;
    if !m.is_finite() {
        return Err(MatrixError::NonFinite);
    }
    let norm = m.frobenius_norm();
    let defect = m.hermitian_defect();
    if defect > tol.structural_tol * norm {
        return Err(MatrixError::NotHermitian {
            defect: defect.as_f64(),
        });
    }

    let half = T::lit(0.5);
    let mut a = (m + &m.adjoint()).scale_real(half);
    let mut v = CMatrix::identity(n);
    let target = T::epsilon() * norm;

    let mut sweeps = 0;
    while norm > T::zero() {
        if off_diagonal_norm(&a) <= target {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(MatrixError::NoConvergence {
                sweeps,
                residual: off_diagonal_norm(&a).as_f64(),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        a[(i, i)]
            .re
            .partial_cmp(&a[(j, j)].re)
            .expect("finite eigenvalues")
    });
    let values = order.iter().map(|&i| a[(i, i)].re).collect();
    let vectors = v.select_columns(&order);
    Ok(HermitianEig { values, vectors })
}

fn off_diagonal_norm<T: Real>(a: &CMatrix<T>) -> T {
    let n = a.nrows();
    let mut s = T::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating `a[p][q]`.
fn rotate<T: Real>(a: &mut CMatrix<T>, v: &mut CMatrix<T>, p: usize, q: usize) {
    let apq = a[(p, q)];
    let mag = apq.norm();
    if mag <= T::min_positive_value() {
        return;
    }
    let phase = apq / mag;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;
    let two = T::lit(2.0);
    let tau = (aqq - app) / (two * mag);
    let t = if tau >= T::zero() {
        T::one() / (tau + (T::one() + tau * tau).sqrt())
    } else {
        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;

    // G = diag(1, conj(phase)) · [[c, s], [-s, c]] acting on the (p, q) plane.
    let g_pp = creal(c);
    let g_pq = creal(s);
    let g_qp = phase.conj() * (-s);
    let g_qq = phase.conj() * c;

    let n = a.nrows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = creal(T::zero());
    a[(q, p)] = creal(T::zero());
    a[(p, p)] = creal(a[(p, p)].re);
    a[(q, q)] = creal(a[(q, q)].re);

    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// Spectral decomposition of a unitary matrix: `U = V·diag(e^{iφ})·V†`.
#[derive(Debug, Clone)]
pub struct UnitaryEig<T> {
    /// Eigenvalues on the unit circle, ordered by phase in `(−π, π]`.
    pub eigenvalues: Vec<Complex<T>>,
    pub phases: Vec<T>,
    pub vectors: CMatrix<T>,
}

impl<T: Real> UnitaryEig<T> {
    /// `V·diag(f(e_j))·V†`.
    pub fn apply(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> CMatrix<T> {
        let d: Vec<Complex<T>> = self.eigenvalues.iter().map(|&z| f(z)).collect();
        &(&self.vectors * &CMatrix::from_diagonal(&d)) * &self.vectors.adjoint()
    }
}

/// Eigendecomposition of a unitary (hence normal) matrix.
///
/// `U = H₁ + iH₂` with commuting hermitian parts. `H₁` is diagonalized
/// first; each cluster of nearly equal eigenvalues is then split by
/// diagonalizing `H₂` restricted to it. Eigenvalues are the Rayleigh
/// quotients `v†Uv`, renormalized onto the unit circle.
pub fn unitary_eig<T: Real>(
    u: &CMatrix<T>,
    tol: &Tolerance<T>,
) -> Result<UnitaryEig<T>, MatrixError> {
    require_unitary(u, tol)?;
    let n = u.nrows();
    let half = T::lit(0.5);
    let uh = u.adjoint();
    let h1 = (u + &uh).scale_real(half);
    let h2 = (u - &uh).scale(ci::<T>().inv() * half);

    let first = hermitian_eig(&h1, tol)?;
    let gap = T::lit(1e-6).max(T::epsilon().sqrt());
    let mut vectors = CMatrix::zeros(n, n);
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && first.values[end] - first.values[end - 1] <= gap {
            end += 1;
        }
        let idx: Vec<usize> = (start..end).collect();
        let vg = first.vectors.select_columns(&idx);
        if idx.len() == 1 {
            vectors.set_block(0, start, &vg);
        } else {
            // hermitian by construction; for hermitian U it is pure rounding
            let k = &(&vg.adjoint() * &h2) * &vg;
            let k = (&k + &k.adjoint()).scale_real(half);
            let inner = hermitian_eig(&k, tol)?;
            vectors.set_block(0, start, &(&vg * &inner.vectors));
        }
        start = end;
    }

    let mut entries: Vec<(T, Complex<T>, usize)> = (0..n)
        .map(|j| {
            let col = vectors.column(j);
            let ucol = u.mul_vec(&col);
            let rq = col
                .iter()
                .zip(&ucol)
                .fold(creal(T::zero()), |acc, (a, b)| acc + a.conj() * *b);
            let z = rq / rq.norm();
            (z.arg(), z, j)
        })
        .collect();
    entries.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite phases"));

    let order: Vec<usize> = entries.iter().map(|e| e.2).collect();
    Ok(UnitaryEig {
        phases: entries.iter().map(|e| e.0).collect(),
        eigenvalues: entries.iter().map(|e| e.1).collect(),
        vectors: vectors.select_columns(&order),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    fn c(re: f64, im: f64) -> Complex<f64> {
        cplx(re, im)
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let m = CMatrix::from_real_diagonal(&[2.0, -3.0]);
        let e = hermitian_eig(&m, &Tolerance::default()).unwrap();
        assert_eq!(e.values, vec![-3.0, 2.0]);
        let expected = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert_eq!(e.vectors, expected);
    }

    #[test]
    fn pauli_x() {
        let m = CMatrix::<f64>::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let e = hermitian_eig(&m, &Tolerance::default()).unwrap();
        assert!((e.values[0] + 1.0).abs() < 1e-15);
        assert!((e.values[1] - 1.0).abs() < 1e-15);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // eigenvectors are determined up to phase; compare |overlap|
        let v0 = e.vectors.column(0);
        let v1 = e.vectors.column(1);
        let o0 = (v0[0] * s - v0[1] * s).norm();
        let o1 = (v1[0] * s + v1[1] * s).norm();
        assert!((o0 - 1.0).abs() < 1e-14 && (o1 - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = CMatrix::from_rows(&[
            vec![c(0.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0)],
        ]);
        assert!(matches!(
            hermitian_eig(&m, &Tolerance::default()),
            Err(MatrixError::NotHermitian { .. })
        ));
    }

    #[test]
    fn complex_two_by_two() {
        let m = CMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, -2.0)],
            vec![c(0.0, 2.0), c(-1.0, 0.0)],
        ]);
        let e = hermitian_eig(&m, &Tolerance::default()).unwrap();
        let r = 5f64.sqrt();
        assert!((e.values[0] + r).abs() < 1e-14 && (e.values[1] - r).abs() < 1e-14);
        assert!(e.reconstruct().distance(&m) < 1e-14);
        assert!(e.vectors.unitary_defect() < 1e-14);
    }

    #[test]
    fn unitary_spectrum_of_diagonal() {
        let u = CMatrix::from_diagonal(&[c(-1.0, 0.0), c(0.0, 1.0)]);
        let e = unitary_eig(&u, &Tolerance::default()).unwrap();
        assert!((e.phases[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
        assert!((e.eigenvalues[1] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!(e.apply(|z| z).distance(&u) < 1e-14);
    }

    #[test]
    fn unitary_conjugate_pair_is_separated() {
        // eigenvalues e^{±iφ} share the same real part
        let phi: f64 = 0.7;
        let d = CMatrix::from_diagonal(&[
            c(phi.cos(), phi.sin()),
            c(phi.cos(), -phi.sin()),
            c(1.0, 0.0),
        ]);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let q = CMatrix::from_rows(&[
            vec![c(s, 0.0), c(0.0, s), c(0.0, 0.0)],
            vec![c(0.0, s), c(s, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ]);
        let u = &(&q * &d) * &q.adjoint();
        let e = unitary_eig(&u, &Tolerance::default()).unwrap();
        assert!((e.phases[0] + phi).abs() < 1e-12);
        assert!(e.phases[1].abs() < 1e-12);
        assert!((e.phases[2] - phi).abs() < 1e-12);
        assert!(e.apply(|z| z).distance(&u) < 1e-12);
    }
}
