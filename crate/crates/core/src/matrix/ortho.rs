use num_complex::Complex;

use super::{CMatrix, Tolerance};
use crate::scalar::{czero, Real};

/// Orthonormal basis for the column span of a matrix.
#[derive(Debug, Clone)]
pub struct Orthonormalized<T> {
    /// `rows × rank` matrix with orthonormal columns.
    pub q: CMatrix<T>,
    pub rank: usize,
}

/// Modified Gram–Schmidt with one re-orthogonalization pass.
///
/// A column whose residual norm falls below `structural_tol · ‖B‖` is
/// considered dependent and dropped.
pub fn orthonormalize<T: Real>(b: &CMatrix<T>, tol: &Tolerance<T>) -> Orthonormalized<T> {
    let threshold = tol.structural_tol * b.frobenius_norm();
    let rows = b.nrows();
    let mut basis: Vec<Vec<Complex<T>>> = Vec::new();
    for j in 0..b.ncols() {
        let mut v = b.column(j);
        for _ in 0..2 {
            for q in &basis {
                let proj = dot(q, &v);
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= *qi * proj;
                }
            }
        }
        let norm = norm2(&v);
        if norm > threshold && norm > T::zero() {
            for vi in &mut v {
                *vi = *vi / norm;
            }
            basis.push(v);
        }
    }
    let rank = basis.len();
    Orthonormalized {
        q: CMatrix::from_columns(rows, &basis),
        rank,
    }
}

/// Orthonormal basis for the orthogonal complement of the column span of `q`,
/// whose columns must already be orthonormal.
pub fn orthogonal_complement<T: Real>(q: &CMatrix<T>, tol: &Tolerance<T>) -> CMatrix<T> {
    let m = q.nrows();
    let r = q.ncols();
    let mut basis: Vec<Vec<Complex<T>>> = (0..r).map(|j| q.column(j)).collect();
    // Unit vectors as candidates: their residuals are O(1), so a fixed
    // threshold relative to 1 is appropriate here.
    let threshold = T::lit(0.5)
        .min(T::lit(1e3) * tol.structural_tol)
        .max(tol.structural_tol);
    let mut candidates: Vec<(usize, T)> = (0..m)
        .map(|i| {
            let w: T = basis.iter().map(|b| b[i].norm_sqr()).sum();
            (i, w)
        })
        .collect();
    // least-covered coordinate directions first for better conditioning
    candidates.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite weights"));
    let mut extra = Vec::new();
    for (i, _) in candidates {
        if basis.len() == m {
            break;
        }
        let mut v = vec![czero::<T>(); m];
        v[i] = Complex::new(T::one(), T::zero());
        for _ in 0..2 {
            for b in &basis {
                let proj = dot(b, &v);
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi -= *bi * proj;
                }
            }
        }
        let norm = norm2(&v);
        if norm > threshold {
            for vi in &mut v {
                *vi = *vi / norm;
            }
            basis.push(v.clone());
            extra.push(v);
        }
    }
    CMatrix::from_columns(m, &extra)
}

/// `a† b`.
pub(crate) fn dot<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(czero(), |acc, (x, y)| acc + x.conj() * *y)
}

pub(crate) fn norm2<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}
