//! Hermitian symplectic geometry on `ℂ^m`.
//!
//! A space is `ℂ^m` with the form `⟨φ, ψ⟩ = (φ, ωψ)` for a nondegenerate
//! skew-hermitian `ω`. Subspaces are always represented by matrices whose
//! columns span them. Where a basis change is written as a coefficient sum
//! `ξ_i = Σ_j g_ij ξ_{0,j}` (coefficients along rows), the column convention
//! used here is its transpose.

use num_complex::Complex;
use thiserror::Error;

use crate::matrix::{
    hermitian_eig, inverse, orthogonal_complement, orthonormalize, require_unitary, CMatrix,
    HermitianEig, MatrixError, Tolerance,
};
use crate::scalar::{ci, creal, Real};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum HsgError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("form matrix is not skew-hermitian (defect {defect:.3e})")]
    NotSkewHermitian { defect: f64 },
    #[error("form is degenerate: |eigenvalue| {min_abs_eigenvalue:.3e} of -iω along near-null vector {null_vector:?}")]
    Degenerate {
        min_abs_eigenvalue: f64,
        null_vector: Vec<(f64, f64)>,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("space is not canonical: signature ({n_plus}, {n_minus})")]
    NotCanonical { n_plus: usize, n_minus: usize },
    #[error("operation requires an even-dimensional space, got dimension {dim}")]
    OddDimension { dim: usize },
    #[error("subspace is not a Lagrange plane")]
    NotLagrange,
    #[error("basis columns are linearly dependent (rank {rank} < {cols})")]
    RankDeficient { rank: usize, cols: usize },
}

/// The standard form `J = [[0, 𝕀], [−𝕀, 0]]` on `ℂ^{2n}`.
pub fn j_matrix<T: Real>(n: usize) -> CMatrix<T> {
    let id = CMatrix::identity(n);
    let z = CMatrix::zeros(n, n);
    CMatrix::from_blocks(&z, &id, &-&id, &z)
}

/// `𝕀_{(n₊,n₋)} = diag(𝕀_{n₊}, −𝕀_{n₋})`.
pub fn signature_matrix<T: Real>(n_plus: usize, n_minus: usize) -> CMatrix<T> {
    let d: Vec<T> = std::iter::repeat(T::one())
        .take(n_plus)
        .chain(std::iter::repeat(-T::one()).take(n_minus))
        .collect();
    CMatrix::from_real_diagonal(&d)
}

/// `W = (1/√2)[[𝕀, i𝕀], [i𝕀, 𝕀]]`, which block-diagonalizes matrices of the
/// form `[[A, B], [−B, A]]` and maps `i𝕀_{(n,n)}` to `J` by congruence:
/// `W·(i𝕀_{(n,n)})·W† = J`.
pub fn w_matrix<T: Real>(n: usize) -> CMatrix<T> {
    let s = T::lit(std::f64::consts::FRAC_1_SQRT_2);
    let id = CMatrix::identity(n);
    let iid = id.scale(ci());
    CMatrix::from_blocks(&id, &iid, &iid, &id).scale_real(s)
}

/// Counts of positive and negative eigenvalues of `−iω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub n_plus: usize,
    pub n_minus: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.n_plus + self.n_minus
    }

    /// A space admits a canonical basis iff `n₊ = n₋`.
    pub fn is_canonical(&self) -> bool {
        self.n_plus == self.n_minus
    }
}

/// `ℂ^m` equipped with a validated nondegenerate hermitian symplectic form.
#[derive(Debug, Clone)]
pub struct HermitianSymplecticSpace<T> {
    omega: CMatrix<T>,
    tol: Tolerance<T>,
    // spectral data of −iω, computed once at construction
    spectrum: HermitianEig<T>,
}

/// Validates `ω` (skew-hermitian and nondegenerate) and builds the space.
///
/// Forms whose smallest `|eigenvalue|` of `−iω` lies within ten times the
/// structural tolerance are rejected as degenerate.
pub fn make_space<T: Real>(
    omega: CMatrix<T>,
    tol: Tolerance<T>,
) -> Result<HermitianSymplecticSpace<T>, HsgError> {
    omega.require_square()?;
    if !omega.is_finite() {
        return Err(MatrixError::NonFinite.into());
    }
    let norm = omega.frobenius_norm();
    let defect = omega.skew_hermitian_defect();
    if defect > tol.structural_tol * norm || norm == T::zero() {
        if norm == T::zero() && omega.nrows() > 0 {
            return Err(HsgError::Degenerate {
                min_abs_eigenvalue: 0.0,
                null_vector: unit_vector_f64(omega.nrows(), 0),
            });
        }
        return Err(HsgError::NotSkewHermitian {
            defect: defect.as_f64(),
        });
    }
    let minus_i_omega = omega.scale(-ci::<T>());
    let spectrum = hermitian_eig(&minus_i_omega, &tol)?;
    let (idx, min_abs) = spectrum
        .values
        .iter()
        .enumerate()
        .map(|(i, v)| (i, v.abs()))
        .fold(
            (0, T::infinity()),
            |best, cur| if cur.1 < best.1 { cur } else { best },
        );
    if min_abs <= T::lit(10.0) * tol.structural_tol * norm {
        return Err(HsgError::Degenerate {
            min_abs_eigenvalue: min_abs.as_f64(),
            null_vector: spectrum
                .vectors
                .column(idx)
                .iter()
                .map(|z| (z.re.as_f64(), z.im.as_f64()))
                .collect(),
        });
    }
    Ok(HermitianSymplecticSpace {
        omega,
        tol,
        spectrum,
    })
}

fn unit_vector_f64(n: usize, k: usize) -> Vec<(f64, f64)> {
    (0..n)
        .map(|i| (if i == k { 1.0 } else { 0.0 }, 0.0))
        .collect()
}

impl<T: Real> HermitianSymplecticSpace<T> {
    /// `(ℂ^{2n}, J)`.
    pub fn standard(n: usize, tol: Tolerance<T>) -> Result<Self, HsgError> {
        make_space(j_matrix(n), tol)
    }

    pub fn omega(&self) -> &CMatrix<T> {
        &self.omega
    }

    pub fn dim(&self) -> usize {
        self.omega.nrows()
    }

    pub fn tolerance(&self) -> &Tolerance<T> {
        &self.tol
    }

    /// `B†ωB` for a basis matrix `B`.
    pub fn gram(&self, basis: &CMatrix<T>) -> CMatrix<T> {
        &(&basis.adjoint() * &self.omega) * basis
    }

    fn check_subspace(&self, n: &Subspace<T>) -> Result<(), HsgError> {
        if n.ambient_dim() != self.dim() {
            return Err(HsgError::DimensionMismatch {
                expected: self.dim(),
                found: n.ambient_dim(),
            });
        }
        Ok(())
    }
}

/// `⟨φ, ψ⟩ = (φ, ωψ)`: conjugate-linear in `φ`, linear in `ψ`.
pub fn skew_product<T: Real>(
    space: &HermitianSymplecticSpace<T>,
    phi: &[Complex<T>],
    psi: &[Complex<T>],
) -> Result<Complex<T>, HsgError> {
    let m = space.dim();
    for v in [phi, psi] {
        if v.len() != m {
            return Err(HsgError::DimensionMismatch {
                expected: m,
                found: v.len(),
            });
        }
    }
    let w = space.omega.mul_vec(psi);
    Ok(phi
        .iter()
        .zip(&w)
        .fold(creal(T::zero()), |acc, (a, b)| acc + a.conj() * *b))
}

pub fn signature<T: Real>(space: &HermitianSymplecticSpace<T>) -> Signature {
    let n_plus = space
        .spectrum
        .values
        .iter()
        .filter(|v| **v > T::zero())
        .count();
    Signature {
        n_plus,
        n_minus: space.dim() - n_plus,
    }
}

/// Basis change `P` with `P†ωP = i𝕀_{(n₊,n₋)}`.
///
/// With `−iω = U D U†`, columns of `U` are reordered so positive eigenvalues
/// come first, and `P = U H^{-1}` with `H = |D|^{1/2}`.
pub fn canonical_transform<T: Real>(space: &HermitianSymplecticSpace<T>) -> CMatrix<T> {
    let eig = &space.spectrum;
    let m = space.dim();
    let order: Vec<usize> = (0..m)
        .filter(|&i| eig.values[i] > T::zero())
        .chain((0..m).filter(|&i| eig.values[i] < T::zero()))
        .collect();
    let inv_h: Vec<T> = order
        .iter()
        .map(|&i| T::one() / eig.values[i].abs().sqrt())
        .collect();
    &eig.vectors.select_columns(&order) * &CMatrix::from_real_diagonal(&inv_h)
}

/// Basis `Q` with `Q†ωQ = J`, available iff `n₊ = n₋`.
///
/// `Q = P·W†` where `P` is the canonical transform; `W†` carries
/// `i𝕀_{(n,n)}` to `J`.
pub fn canonical_basis<T: Real>(
    space: &HermitianSymplecticSpace<T>,
) -> Result<CMatrix<T>, HsgError> {
    let sig = signature(space);
    if !sig.is_canonical() {
        return Err(HsgError::NotCanonical {
            n_plus: sig.n_plus,
            n_minus: sig.n_minus,
        });
    }
    let p = canonical_transform(space);
    Ok(&p * &w_matrix::<T>(sig.n_plus).adjoint())
}

/// A subspace of `ℂ^m` given by a full-column-rank basis matrix.
///
/// The zero subspace is represented by an `m × 0` basis.
#[derive(Debug, Clone)]
pub struct Subspace<T> {
    basis: CMatrix<T>,
}

impl<T: Real> Subspace<T> {
    pub fn new(basis: CMatrix<T>, tol: &Tolerance<T>) -> Result<Self, HsgError> {
        if !basis.is_finite() {
            return Err(MatrixError::NonFinite.into());
        }
        let rank = orthonormalize(&basis, tol).rank;
        if rank != basis.ncols() {
            return Err(HsgError::RankDeficient {
                rank,
                cols: basis.ncols(),
            });
        }
        Ok(Subspace { basis })
    }

    /// Span of the given column vectors.
    pub fn span(
        ambient_dim: usize,
        vectors: &[Vec<Complex<T>>],
        tol: &Tolerance<T>,
    ) -> Result<Self, HsgError> {
        Self::new(CMatrix::from_columns(ambient_dim, vectors), tol)
    }

    /// Span of the standard unit vectors `e_i` for the listed indices.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Self {
        let id = CMatrix::identity(ambient_dim);
        Subspace {
            basis: id.select_columns(indices),
        }
    }

    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            basis: CMatrix::zeros(ambient_dim, 0),
        }
    }

    pub fn basis(&self) -> &CMatrix<T> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn orthonormal_basis(&self, tol: &Tolerance<T>) -> CMatrix<T> {
        orthonormalize(&self.basis, tol).q
    }

    /// Whether `v` lies in the span, judged by its relative residual after
    /// orthogonal projection.
    pub fn contains(&self, v: &[Complex<T>], tol: &Tolerance<T>) -> bool {
        let q = self.orthonormal_basis(tol);
        let coeffs = q.adjoint().mul_vec(v);
        let proj = q.mul_vec(&coeffs);
        let res: T = v
            .iter()
            .zip(&proj)
            .map(|(a, b)| (*a - *b).norm_sqr())
            .sum::<T>()
            .sqrt();
        let norm: T = v.iter().map(|a| a.norm_sqr()).sum::<T>().sqrt();
        res <= T::lit(10.0) * tol.structural_tol * T::one().max(norm)
    }

    /// Equality of column spans.
    pub fn same_span(&self, other: &Self, tol: &Tolerance<T>) -> bool {
        if self.ambient_dim() != other.ambient_dim() || self.dim() != other.dim() {
            return false;
        }
        let a = self.orthonormal_basis(tol);
        let b = other.orthonormal_basis(tol);
        // ‖(𝕀 − AA†)B‖ vanishes iff span B ⊂ span A; equal dimensions give equality.
        let resid = &b - &(&a * &(&a.adjoint() * &b));
        resid.frobenius_norm() <= T::lit(1e3) * tol.structural_tol
    }
}

/// `N⊥ = {φ : ⟨φ, ψ⟩ = 0 ∀ψ ∈ N}`, the orthogonal complement of `ωN`.
pub fn skew_complement<T: Real>(
    space: &HermitianSymplecticSpace<T>,
    n: &Subspace<T>,
) -> Result<Subspace<T>, HsgError> {
    space.check_subspace(n)?;
    let omega_n = &space.omega * n.basis();
    let q = orthonormalize(&omega_n, &space.tol).q;
    Ok(Subspace {
        basis: orthogonal_complement(&q, &space.tol),
    })
}

/// `N ⊂ N⊥`, tested as `‖B†ωB‖ ≤ structural_tol·‖ω‖` on an orthonormal basis.
pub fn is_isotropic<T: Real>(
    space: &HermitianSymplecticSpace<T>,
    n: &Subspace<T>,
) -> Result<bool, HsgError> {
    space.check_subspace(n)?;
    if n.dim() == 0 {
        return Ok(true);
    }
    let b = n.orthonormal_basis(&space.tol);
    let g = space.gram(&b);
    Ok(g.frobenius_norm() <= space.tol.structural_tol * space.omega.frobenius_norm())
}

/// Isotropic of dimension `m/2`.
pub fn is_lagrange<T: Real>(
    space: &HermitianSymplecticSpace<T>,
    n: &Subspace<T>,
) -> Result<bool, HsgError> {
    let m = space.dim();
    if m % 2 != 0 {
        return Err(HsgError::OddDimension { dim: m });
    }
    Ok(n.dim() == m / 2 && is_isotropic(space, n)?)
}

/// Canonical basis `{p_i, q_i}` with the `p_i` spanning a given Lagrange plane.
#[derive(Debug, Clone)]
pub struct CanonicalBasis<T> {
    /// `2n × n`, spans the Lagrange plane.
    pub p: CMatrix<T>,
    /// `2n × n`, dual vectors with `⟨p_i, q_j⟩ = δ_ij`.
    pub q: CMatrix<T>,
}

impl<T: Real> CanonicalBasis<T> {
    /// `[p | q]`.
    pub fn matrix(&self) -> CMatrix<T> {
        self.p.hstack(&self.q)
    }

    /// Gram matrix of `(p₁..p_n, q₁..q_n)` under the form; equals `J`.
    pub fn gram(&self, space: &HermitianSymplecticSpace<T>) -> CMatrix<T> {
        space.gram(&self.matrix())
    }
}

/// Extends a Lagrange plane to a canonical basis.
///
/// Each step takes `p` as the first orthonormal vector of the remaining plane,
/// picks the dual candidate `q̂ ∈ V` maximizing `|⟨p, q̂⟩|` (the projection
/// of `ω†p` onto the current symplectic subspace `V`), normalizes
/// `⟨p, q⟩ = 1`, shifts `q` along `p` so that `⟨q, q⟩ = 0`, and recurses on
/// the skew complement of `span{p, q}` inside `V`.
pub fn complete_to_canonical_basis<T: Real>(
    space: &HermitianSymplecticSpace<T>,
    plane: &Subspace<T>,
) -> Result<CanonicalBasis<T>, HsgError> {
    if !is_lagrange(space, plane)? {
        return Err(HsgError::NotLagrange);
    }
    let tol = &space.tol;
    let m = space.dim();
    let n = m / 2;
    let omega = &space.omega;
    let omega_h = omega.adjoint();

    let mut v = CMatrix::identity(m);
    let mut l = plane.orthonormal_basis(tol);
    let mut ps = Vec::with_capacity(n);
    let mut qs = Vec::with_capacity(n);

    for _ in 0..n {
        let p = l.column(0);
        let w = omega_h.mul_vec(&p);
        let q_hat = v.mul_vec(&v.adjoint().mul_vec(&w));
        let s = skew_product(space, &p, &q_hat)?;
        if s.norm() <= tol.structural_tol * omega.frobenius_norm() {
            return Err(HsgError::NotLagrange);
        }
        let mut q: Vec<Complex<T>> = q_hat.iter().map(|z| *z / s).collect();
        let qq = skew_product(space, &q, &q)?;
        let shift = qq * T::lit(0.5);
        for (qi, pi) in q.iter_mut().zip(&p) {
            *qi += shift * *pi;
        }

        let pq = CMatrix::from_columns(m, &[p.clone(), q.clone()]);
        let g_v = &(&pq.adjoint() * omega) * &v;
        v = &v * &null_space(&g_v, tol);
        let g_l = &(&CMatrix::column_vector(&q).adjoint() * omega) * &l;
        l = &l * &null_space(&g_l, tol);

        ps.push(p);
        qs.push(q);
    }
    Ok(CanonicalBasis {
        p: CMatrix::from_columns(m, &ps),
        q: CMatrix::from_columns(m, &qs),
    })
}

/// Orthonormal basis of `ker G`.
fn null_space<T: Real>(g: &CMatrix<T>, tol: &Tolerance<T>) -> CMatrix<T> {
    let row_space = orthonormalize(&g.adjoint(), tol).q;
    orthogonal_complement(&row_space, tol)
}

/// `g†Jg = J` within `structural_tol`.
pub fn is_j_unitary<T: Real>(g: &CMatrix<T>, tol: &Tolerance<T>) -> Result<bool, HsgError> {
    let m = g.require_square()?;
    if m % 2 != 0 {
        return Err(HsgError::OddDimension { dim: m });
    }
    let j = j_matrix::<T>(m / 2);
    let defect = (&(&g.adjoint() * &j) * g).distance(&j);
    Ok(defect <= tol.structural_tol)
}

/// `[[A, B], [−B, A]]`.
pub fn symplectic_block_matrix<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>) -> CMatrix<T> {
    CMatrix::from_blocks(a, b, &-b, a)
}

/// Blocks `(A − iB, A + iB)` of `W·g·W†` for `g = [[A, B], [−B, A]]`,
/// together with the norm of the off-diagonal blocks of `W·g·W†`.
pub fn blockwise_diagonalize<T: Real>(
    g: &CMatrix<T>,
) -> Result<(CMatrix<T>, CMatrix<T>, T), HsgError> {
    let m = g.require_square()?;
    if m % 2 != 0 {
        return Err(HsgError::OddDimension { dim: m });
    }
    let n = m / 2;
    let w = w_matrix::<T>(n);
    let d = &(&w * g) * &w.adjoint();
    let off = (d.block(0, n, n, n).frobenius_norm().powi(2)
        + d.block(n, 0, n, n).frobenius_norm().powi(2))
    .sqrt();
    Ok((d.block(0, 0, n, n), d.block(n, n, n, n), off))
}

/// A Lagrange plane generated from a unitary matrix.
#[derive(Debug, Clone)]
pub struct UnitaryPlane<T> {
    /// `g = ½[[U+𝕀, i(U−𝕀)], [−i(U−𝕀), U+𝕀]]`, unitary and J-unitary.
    pub g: CMatrix<T>,
    /// Column span of `[X; Y]` with `X = (U+𝕀)/2`, `Y = (i/2)(U−𝕀)`.
    pub plane: Subspace<T>,
}

/// Maps `U ∈ U(n)` to its Lagrange plane in `(ℂ^{2n}, J)`.
///
/// In the coefficient-row reading of `g`, its first `n` rows describe the
/// plane of `Uᵀ`; the column basis `[X; Y]` returned here is the plane of
/// `U` itself.
pub fn plane_from_unitary<T: Real>(
    u: &CMatrix<T>,
    tol: &Tolerance<T>,
) -> Result<UnitaryPlane<T>, HsgError> {
    require_unitary(u, tol)?;
    let n = u.nrows();
    let half = T::lit(0.5);
    let id = CMatrix::identity(n);
    let a = (u + &id).scale_real(half);
    let b = (u - &id).scale(ci::<T>() * half);
    let g = symplectic_block_matrix(&a, &b);
    let basis = a.vstack(&b);
    Ok(UnitaryPlane {
        g,
        plane: Subspace { basis },
    })
}

/// Inverse of [`plane_from_unitary`] for planes of `(ℂ^{2n}, J)`:
/// `U = (X − iY)(X + iY)^{-1}` where `[X; Y]` is any basis of the plane.
pub fn plane_to_unitary<T: Real>(
    plane: &Subspace<T>,
    tol: &Tolerance<T>,
) -> Result<CMatrix<T>, HsgError> {
    let m = plane.ambient_dim();
    if m % 2 != 0 {
        return Err(HsgError::OddDimension { dim: m });
    }
    let n = m / 2;
    let space = HermitianSymplecticSpace::standard(n, *tol)?;
    if !is_lagrange(&space, plane)? {
        return Err(HsgError::NotLagrange);
    }
    let basis = plane.basis();
    let x = basis.block(0, 0, n, n);
    let y = basis.block(n, 0, n, n);
    let iy = y.scale(ci());
    let inv = inverse(&(&x + &iy), tol)?;
    Ok(&(&x - &iy) * &inv.x)
}

/// The `(A, B)` blocks of an orthonormal basis
/// of a Lagrange plane of `(ℂ^{2n}, J)`, stacked as `[A; B]`.
pub fn orthonormal_blocks<T: Real>(
    plane: &Subspace<T>,
    tol: &Tolerance<T>,
) -> (CMatrix<T>, CMatrix<T>) {
    let q = plane.orthonormal_basis(tol);
    let n = plane.ambient_dim() / 2;
    (q.block(0, 0, n, q.ncols()), q.block(n, 0, n, q.ncols()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::cplx;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        cplx(re, im)
    }

    fn tol() -> Tolerance<f64> {
        Tolerance::default()
    }

    #[test]
    fn standard_spaces_are_valid() {
        assert!(make_space(j_matrix::<f64>(2), tol()).is_ok());
        assert!(make_space(CMatrix::<f64>::identity(4).scale(c(0.0, 1.0)), tol()).is_ok());
    }

    #[test]
    fn symmetric_form_rejected() {
        let m = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert!(matches!(
            make_space(m, tol()),
            Err(HsgError::NotSkewHermitian { .. })
        ));
    }

    #[test]
    fn degenerate_form_reports_null_vector() {
        let m = CMatrix::from_diagonal(&[c(0.0, 1.0), c(0.0, 0.0)]);
        match make_space(m, tol()) {
            Err(HsgError::Degenerate { null_vector, .. }) => {
                assert!(
                    (null_vector[1].0.abs() - 1.0).abs() < 1e-12
                        || (null_vector[1].1.abs() - 1.0).abs() < 1e-12
                );
            }
            other => panic!("expected Degenerate, got {other:?}"),
        }
    }

    #[test]
    fn skew_products_on_small_spaces() {
        let s = HermitianSymplecticSpace::<f64>::standard(1, tol()).unwrap();
        let e1 = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let e2 = vec![c(0.0, 0.0), c(1.0, 0.0)];
        assert_eq!(skew_product(&s, &e1, &e2).unwrap(), c(1.0, 0.0));
        assert_eq!(skew_product(&s, &e1, &e1).unwrap(), c(0.0, 0.0));
        let ii = make_space(CMatrix::<f64>::identity(2).scale(c(0.0, 1.0)), tol()).unwrap();
        assert_eq!(skew_product(&ii, &e1, &e1).unwrap(), c(0.0, 1.0));
        assert!(matches!(
            skew_product(&ii, &e1, &[c(1.0, 0.0)]),
            Err(HsgError::DimensionMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn signatures() {
        let s = make_space(CMatrix::<f64>::identity(4).scale(c(0.0, 1.0)), tol()).unwrap();
        assert_eq!(
            signature(&s),
            Signature {
                n_plus: 4,
                n_minus: 0
            }
        );
        let s = HermitianSymplecticSpace::<f64>::standard(3, tol()).unwrap();
        assert_eq!(
            signature(&s),
            Signature {
                n_plus: 3,
                n_minus: 3
            }
        );
        let s = make_space(
            CMatrix::from_diagonal(&[c(0.0, 1.0), c(0.0, 1.0), c(0.0, -1.0)]),
            tol(),
        )
        .unwrap();
        assert_eq!(
            signature(&s),
            Signature {
                n_plus: 2,
                n_minus: 1
            }
        );
    }

    #[test]
    fn canonical_transform_of_diagonal_forms() {
        let s = make_space(signature_matrix::<f64>(2, 1).scale(c(0.0, 1.0)), tol()).unwrap();
        assert_eq!(canonical_transform(&s), CMatrix::identity(3));
        let s = make_space(CMatrix::<f64>::identity(2).scale(c(0.0, 2.0)), tol()).unwrap();
        let p = canonical_transform(&s);
        assert!(
            p.distance(&CMatrix::identity(2).scale_real(std::f64::consts::FRAC_1_SQRT_2)) < 1e-15
        );
    }

    #[test]
    fn canonical_basis_obstruction() {
        let s = make_space(CMatrix::<f64>::identity(4).scale(c(0.0, 1.0)), tol()).unwrap();
        assert_eq!(
            canonical_basis(&s).unwrap_err(),
            HsgError::NotCanonical {
                n_plus: 4,
                n_minus: 0
            }
        );
    }

    #[test]
    fn w_dagger_maps_signature_form_to_j() {
        // direct 2×2 multiplication: T = W†, T†(i𝕀_{(1,1)})T = W(i𝕀_{(1,1)})W†
        let w = w_matrix::<f64>(1);
        let form = signature_matrix::<f64>(1, 1).scale(c(0.0, 1.0));
        let t = w.adjoint();
        let r = &(&t.adjoint() * &form) * &t;
        assert!(r.distance(&j_matrix(1)) < 1e-12);

        let s = make_space(form, tol()).unwrap();
        let q = canonical_basis(&s).unwrap();
        assert!(s.gram(&q).distance(&j_matrix(1)) < 1e-12);
        assert!(q.distance(&t) < 1e-12);
    }

    #[test]
    fn canonical_basis_of_j() {
        let s = HermitianSymplecticSpace::<f64>::standard(2, tol()).unwrap();
        let q = canonical_basis(&s).unwrap();
        assert!(s.gram(&q).distance(&j_matrix(2)) < 1e-12);
    }

    #[test]
    fn lagrange_complement_examples() {
        let s = HermitianSymplecticSpace::<f64>::standard(1, tol()).unwrap();
        let n = Subspace::coordinate(2, &[0]);
        let perp = skew_complement(&s, &n).unwrap();
        assert!(perp.same_span(&n, &tol()));
        let full = Subspace::coordinate(2, &[0, 1]);
        assert_eq!(skew_complement(&s, &full).unwrap().dim(), 0);
    }

    #[test]
    fn isotropy_examples() {
        let s = HermitianSymplecticSpace::<f64>::standard(2, tol()).unwrap();
        assert!(is_isotropic(&s, &Subspace::coordinate(4, &[0, 1])).unwrap());
        assert!(!is_isotropic(&s, &Subspace::coordinate(4, &[0, 2])).unwrap());
        assert!(is_lagrange(&s, &Subspace::coordinate(4, &[0, 1])).unwrap());
        assert!(!is_lagrange(&s, &Subspace::coordinate(4, &[0])).unwrap());
        let odd = make_space(CMatrix::<f64>::identity(3).scale(c(0.0, 1.0)), tol()).unwrap();
        assert!(matches!(
            is_lagrange(&odd, &Subspace::coordinate(3, &[0])),
            Err(HsgError::OddDimension { dim: 3 })
        ));
    }

    #[test]
    fn completion_of_coordinate_plane() {
        let s = HermitianSymplecticSpace::<f64>::standard(2, tol()).unwrap();
        let basis = complete_to_canonical_basis(&s, &Subspace::coordinate(4, &[0, 1])).unwrap();
        assert!(basis.gram(&s).distance(&j_matrix(2)) < 1e-12);
        assert!(
            basis
                .p
                .distance(&CMatrix::identity(4).select_columns(&[0, 1]))
                < 1e-12
        );
    }

    #[test]
    fn completion_of_tilted_line() {
        let s = HermitianSymplecticSpace::<f64>::standard(1, tol()).unwrap();
        // conj(x0)·x1 is real, so the line is isotropic
        let r = 5f64.sqrt();
        let plane = Subspace::span(2, &[vec![c(0.0, 1.0 / r), c(0.0, 2.0 / r)]], &tol()).unwrap();
        let b = complete_to_canonical_basis(&s, &plane).unwrap();
        let p = b.p.column(0);
        let q = b.q.column(0);
        // direct 2×2 Gram computation with J = [[0,1],[-1,0]]: ⟨x,y⟩ = conj(x0) y1 − conj(x1) y0
        let form = |x: &[C], y: &[C]| x[0].conj() * y[1] - x[1].conj() * y[0];
        assert!((form(&p, &q) - c(1.0, 0.0)).norm() < 1e-12);
        assert!(form(&q, &q).norm() < 1e-12);
        assert!(form(&p, &p).norm() < 1e-12);
        assert!(plane.contains(&p, &tol()));
    }

    #[test]
    fn non_lagrange_completion_rejected() {
        let s = HermitianSymplecticSpace::<f64>::standard(2, tol()).unwrap();
        assert_eq!(
            complete_to_canonical_basis(&s, &Subspace::coordinate(4, &[0, 2])).unwrap_err(),
            HsgError::NotLagrange
        );
    }

    #[test]
    fn j_unitary_examples() {
        assert!(is_j_unitary(&CMatrix::<f64>::identity(4), &tol()).unwrap());
        let g = CMatrix::from_real_diagonal(&[2.0, 1.0, 0.5, 1.0]);
        assert!(is_j_unitary(&g, &tol()).unwrap());
        assert!(!is_j_unitary(&CMatrix::<f64>::identity(4).scale_real(2.0), &tol()).unwrap());
        assert!(matches!(
            is_j_unitary(&CMatrix::<f64>::identity(3), &tol()),
            Err(HsgError::OddDimension { dim: 3 })
        ));
    }

    #[test]
    fn neumann_and_dirichlet_planes() {
        let id = CMatrix::<f64>::identity(2);
        let up = plane_from_unitary(&id, &tol()).unwrap();
        assert!(up
            .plane
            .same_span(&Subspace::coordinate(4, &[0, 1]), &tol()));
        assert!(plane_to_unitary(&up.plane, &tol()).unwrap().distance(&id) < 1e-14);

        let minus = id.scale_real(-1.0);
        let up = plane_from_unitary(&minus, &tol()).unwrap();
        assert!(up.plane.basis().block(0, 0, 2, 2).frobenius_norm() < 1e-15);
        assert!(
            up.plane
                .basis()
                .block(2, 0, 2, 2)
                .distance(&id.scale(c(0.0, -1.0)))
                < 1e-15
        );
        assert!(up
            .plane
            .same_span(&Subspace::coordinate(4, &[2, 3]), &tol()));
        let dirichlet = Subspace::coordinate(4, &[2, 3]);
        assert!(
            plane_to_unitary(&dirichlet, &tol())
                .unwrap()
                .distance(&minus)
                < 1e-14
        );
    }

    #[test]
    fn swap_plane_is_lagrange() {
        let u = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let up = plane_from_unitary(&u, &tol()).unwrap();
        let s = HermitianSymplecticSpace::standard(2, tol()).unwrap();
        assert!(is_lagrange(&s, &up.plane).unwrap());
        assert!(is_j_unitary(&up.g, &tol()).unwrap());
    }

    #[test]
    fn plane_from_non_unitary_rejected() {
        let u = CMatrix::<f64>::identity(2).scale_real(2.0);
        assert!(matches!(
            plane_from_unitary(&u, &tol()),
            Err(HsgError::Matrix(MatrixError::NotUnitary { .. }))
        ));
    }

    #[test]
    fn plane_to_unitary_is_basis_independent() {
        let u = CMatrix::from_diagonal(&[c(0.0, 1.0), c(-1.0, 0.0)]);
        let up = plane_from_unitary(&u, &tol()).unwrap();
        let mix = CMatrix::from_rows(&[
            vec![c(2.0, 1.0), c(0.0, 1.0)],
            vec![c(1.0, 0.0), c(3.0, -1.0)],
        ]);
        let other = Subspace::new(up.plane.basis() * &mix, &tol()).unwrap();
        assert!(plane_to_unitary(&other, &tol()).unwrap().distance(&u) < 1e-13);
    }
}
