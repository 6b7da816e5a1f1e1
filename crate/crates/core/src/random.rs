//! Random matrix ensembles used by property tests, acceptance checks and the
//! CLI's randomized diagnostics.

use num_complex::Complex;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::matrix::{orthonormalize, CMatrix, Tolerance};
use crate::scalar::Real;

/// Matrix with i.i.d. standard complex Gaussian entries (`E|z|² = 1`).
pub fn complex_gaussian<T, R>(rng: &mut R, rows: usize, cols: usize) -> CMatrix<T>
where
    T: Real,
    R: Rng + ?Sized,
    StandardNormal: Distribution<T>,
{
    let s = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: T = StandardNormal.sample(rng);
        let im: T = StandardNormal.sample(rng);
        Complex::new(re * s, im * s)
    })
}

pub fn complex_gaussian_vector<T, R>(rng: &mut R, n: usize) -> Vec<Complex<T>>
where
    T: Real,
    R: Rng + ?Sized,
    StandardNormal: Distribution<T>,
{
    complex_gaussian(rng, n, 1).column(0)
}

/// Haar-distributed unitary matrix: Gram–Schmidt on a Ginibre matrix (the
/// implied `R` factor has a positive diagonal, which removes the phase bias).
pub fn haar_unitary<T, R>(rng: &mut R, n: usize) -> CMatrix<T>
where
    T: Real,
    R: Rng + ?Sized,
    StandardNormal: Distribution<T>,
{
    loop {
        let g = complex_gaussian(rng, n, n);
        let o = orthonormalize(&g, &Tolerance::default());
        if o.rank == n {
            return o.q;
        }
    }
}

/// `Q·diag(spectrum)·Q†` for a Haar-random `Q`.
pub fn hermitian_with_spectrum<T, R>(rng: &mut R, spectrum: &[T]) -> CMatrix<T>
where
    T: Real,
    R: Rng + ?Sized,
    StandardNormal: Distribution<T>,
{
    let q = haar_unitary(rng, spectrum.len());
    &(&q * &CMatrix::from_real_diagonal(spectrum)) * &q.adjoint()
}

/// Random hermitian matrix `(G + G†)/2`.
pub fn hermitian<T, R>(rng: &mut R, n: usize) -> CMatrix<T>
where
    T: Real,
    R: Rng + ?Sized,
    StandardNormal: Distribution<T>,
{
    let g = complex_gaussian(rng, n, n);
    (&g + &g.adjoint()).scale_real(T::lit(0.5))
}
