//! Self-adjoint vertex conditions for the Schrödinger operator on a star graph.
//!
//! Boundary values at the vertex are collected as `(ψ(0), ψ′(0)) ∈ ℂ^{2n}`
//! (values first, derivatives second), on which the boundary form is the
//! standard `J`. A unitary `U` determines the Lagrange plane
//! `Ran[A; B]`, `A = (U+𝕀)/2`, `B = (i/2)(U−𝕀)`, equivalently the kernel of
//! `[(i/2)(U†−𝕀), ½(U†+𝕀)]`.

use num_complex::Complex;
use thiserror::Error;

use crate::hsg::{HsgError, Subspace};
use crate::matrix::{
    determinant, orthonormalize, require_unitary, solve, unitary_eig, CMatrix, MatrixError,
    Tolerance,
};
use crate::scalar::{ci, creal, Real};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundaryError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error(transparent)]
    Geometry(#[from] HsgError),
    #[error("boundary matrix is not unitary (defect {defect:.3e})")]
    NotUnitary { defect: f64 },
    #[error("(A B) has rank {rank}, expected {n}")]
    RankDeficient { rank: usize, n: usize },
    #[error("A·B† is not hermitian (defect {defect:.3e})")]
    NotSelfAdjointPair { defect: f64 },
    #[error("U is not hermitian; projection form unavailable (defect {defect:.3e})")]
    NotHermitian { defect: f64 },
    #[error("unknown preset '{0}'")]
    UnknownPreset(String),
    #[error("bad preset parameter '{name}': {reason}")]
    BadParameter { name: &'static str, reason: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

fn unitary_error(e: MatrixError) -> BoundaryError {
    match e {
        MatrixError::NotUnitary { defect } => BoundaryError::NotUnitary { defect },
        other => BoundaryError::Matrix(other),
    }
}

/// Vertex conditions determined by a unitary `U`.
#[derive(Debug, Clone)]
pub struct BoundaryConditions<T> {
    u: CMatrix<T>,
    a: CMatrix<T>,
    b: CMatrix<T>,
    hermitian: bool,
}

/// Builds `A = (U+𝕀)/2`, `B = (i/2)(U−𝕀)` from a unitary `U`.
pub fn bc_from_unitary<T: Real>(
    u: &CMatrix<T>,
    tol: &Tolerance<T>,
) -> Result<BoundaryConditions<T>, BoundaryError> {
    require_unitary(u, tol).map_err(unitary_error)?;
    let n = u.nrows();
    let half = T::lit(0.5);
    let id = CMatrix::identity(n);
    let a = (u + &id).scale_real(half);
    let b = (u - &id).scale(ci::<T>() * half);
    let hermitian = u.hermitian_defect() <= tol.structural_tol * T::one().max(u.frobenius_norm());
    Ok(BoundaryConditions {
        u: u.clone(),
        a,
        b,
        hermitian,
    })
}

impl<T: Real> BoundaryConditions<T> {
    /// Number of edges.
    pub fn n(&self) -> usize {
        self.u.nrows()
    }

    pub fn u(&self) -> &CMatrix<T> {
        &self.u
    }

    /// `Ξ(0) = A = (U+𝕀)/2`.
    pub fn a(&self) -> &CMatrix<T> {
        &self.a
    }

    /// `Ξ′(0) = B = (i/2)(U−𝕀)`.
    pub fn b(&self) -> &CMatrix<T> {
        &self.b
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian
    }

    /// `[A; B]`, whose columns span the admissible boundary values.
    pub fn range_matrix(&self) -> CMatrix<T> {
        self.a.vstack(&self.b)
    }

    /// The Lagrange plane of admissible boundary values.
    pub fn plane(&self, tol: &Tolerance<T>) -> Result<Subspace<T>, BoundaryError> {
        Ok(Subspace::new(self.range_matrix(), tol)?)
    }

    /// `(A_ks, B_ks) = ((i/2)(U†−𝕀), ½(U†+𝕀))`: the conditions read
    /// `A_ks ψ(0) + B_ks ψ′(0) = 0`.
    pub fn ks_pair(&self) -> (CMatrix<T>, CMatrix<T>) {
        let half = T::lit(0.5);
        let uh = self.u.adjoint();
        let id = CMatrix::identity(self.n());
        (
            (&uh - &id).scale(ci::<T>() * half),
            (&uh + &id).scale_real(half),
        )
    }

    /// `[A_ks, B_ks]`, an `n × 2n` matrix whose kernel is the plane.
    pub fn kernel_matrix(&self) -> CMatrix<T> {
        let (a, b) = self.ks_pair();
        a.hstack(&b)
    }

    /// `(i/2)(U†−𝕀)ψ(0) + ½(U†+𝕀)ψ′(0)`, zero exactly for admissible data.
    pub fn residual(
        &self,
        value: &[Complex<T>],
        derivative: &[Complex<T>],
    ) -> Result<Vec<Complex<T>>, BoundaryError> {
        let n = self.n();
        for v in [value, derivative] {
            if v.len() != n {
                return Err(BoundaryError::DimensionMismatch {
                    expected: n,
                    found: v.len(),
                });
            }
        }
        let (a, b) = self.ks_pair();
        let r1 = a.mul_vec(value);
        let r2 = b.mul_vec(derivative);
        Ok(r1.iter().zip(&r2).map(|(x, y)| *x + *y).collect())
    }

    /// `‖A†A + B†B − 𝕀‖`.
    pub fn normalization_residual(&self) -> T {
        let g = &(&self.a.adjoint() * &self.a) + &(&self.b.adjoint() * &self.b);
        g.distance(&CMatrix::identity(self.n()))
    }

    /// `‖A†B − B†A‖`.
    pub fn symmetry_residual(&self) -> T {
        (&self.a.adjoint() * &self.b).distance(&(&self.b.adjoint() * &self.a))
    }
}

/// Converts a Kostrykin–Schrader pair (`A ψ(0) + B ψ′(0) = 0`, `(A B)` of
/// rank `n`, `AB†` hermitian) to `U = −(A + iB)^{-1}(A − iB)`.
pub fn bc_from_ks_pair<T: Real>(
    a: &CMatrix<T>,
    b: &CMatrix<T>,
    tol: &Tolerance<T>,
) -> Result<BoundaryConditions<T>, BoundaryError> {
    let n = a.require_square()?;
    if b.nrows() != n || b.ncols() != n {
        return Err(BoundaryError::DimensionMismatch {
            expected: n,
            found: if b.nrows() != n { b.nrows() } else { b.ncols() },
        });
    }
    if !a.is_finite() || !b.is_finite() {
        return Err(MatrixError::NonFinite.into());
    }
    let ab = a.hstack(b);
    let rank = orthonormalize(&ab.adjoint(), tol).rank;
    if rank != n {
        return Err(BoundaryError::RankDeficient { rank, n });
    }
    let abh = a * &b.adjoint();
    let defect = abh.hermitian_defect();
    let scale = T::one().max(a.frobenius_norm() * b.frobenius_norm());
    if defect > tol.structural_tol * scale {
        return Err(BoundaryError::NotSelfAdjointPair {
            defect: defect.as_f64(),
        });
    }
    let ib = b.scale(ci());
    let sol = solve(&(a + &ib), &(a - &ib), tol)?;
    bc_from_unitary(&(-&sol.x), tol)
}

/// Orthogonal projections `P = (U+𝕀)/2`, `P⊥ = 𝕀 − P` for hermitian `U`.
/// The conditions decouple into `P⊥ψ(0) = 0`, `Pψ′(0) = 0`.
#[derive(Debug, Clone)]
pub struct ProjectionPair<T> {
    pub p: CMatrix<T>,
    pub p_perp: CMatrix<T>,
}

pub fn projection_pair<T: Real>(
    bc: &BoundaryConditions<T>,
) -> Result<ProjectionPair<T>, BoundaryError> {
    if !bc.hermitian {
        return Err(BoundaryError::NotHermitian {
            defect: bc.u.hermitian_defect().as_f64(),
        });
    }
    let p = bc.a.clone();
    let p_perp = &CMatrix::identity(bc.n()) - &p;
    Ok(ProjectionPair { p, p_perp })
}

/// Named families of vertex conditions.
#[derive(Debug, Clone, PartialEq)]
pub enum Preset<T> {
    /// `ψ(0) = 0` on every edge, `U = −𝕀`.
    Dirichlet,
    /// `ψ′(0) = 0` on every edge, `U = 𝕀`.
    Neumann,
    /// Continuity and vanishing derivative sum, `U = (2/n)𝟙 − 𝕀`.
    Kirchhoff,
    /// Continuity and `Σ ψ′_i(0) = α ψ(0)`.
    Delta { alpha: T },
    /// Per-edge decoupled conditions: `true` is Dirichlet, `false` Neumann.
    Mixed { dirichlet: Vec<bool> },
}

impl<T: Real> Preset<T> {
    pub const NAMES: [&'static str; 5] = ["dirichlet", "neumann", "kirchhoff", "delta", "mixed"];

    /// Resolves a preset by name. `delta` needs `alpha`, `mixed` needs `mask`.
    pub fn from_name(
        name: &str,
        alpha: Option<T>,
        mask: Option<Vec<bool>>,
    ) -> Result<Self, BoundaryError> {
        match name {
            "dirichlet" => Ok(Preset::Dirichlet),
            "neumann" => Ok(Preset::Neumann),
            "kirchhoff" => Ok(Preset::Kirchhoff),
            "delta" => {
                let alpha = alpha.ok_or(BoundaryError::BadParameter {
                    name: "alpha",
                    reason: "delta preset requires a coupling strength".into(),
                })?;
                Ok(Preset::Delta { alpha })
            }
            "mixed" => {
                let dirichlet = mask.ok_or(BoundaryError::BadParameter {
                    name: "mask",
                    reason: "mixed preset requires a per-edge Dirichlet mask".into(),
                })?;
                Ok(Preset::Mixed { dirichlet })
            }
            other => Err(BoundaryError::UnknownPreset(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Dirichlet => "dirichlet",
            Preset::Neumann => "neumann",
            Preset::Kirchhoff => "kirchhoff",
            Preset::Delta { .. } => "delta",
            Preset::Mixed { .. } => "mixed",
        }
    }
}

/// Boundary conditions of a named family on `n` edges.
pub fn preset<T: Real>(
    kind: &Preset<T>,
    n: usize,
    tol: &Tolerance<T>,
) -> Result<BoundaryConditions<T>, BoundaryError> {
    if n == 0 {
        return Err(BoundaryError::BadParameter {
            name: "n",
            reason: "edge count must be at least 1".into(),
        });
    }
    let id = CMatrix::<T>::identity(n);
    let u = match kind {
        Preset::Dirichlet => -&id,
        Preset::Neumann => id,
        Preset::Kirchhoff => {
            let w = T::lit(2.0) / T::from_usize(n);
            CMatrix::from_fn(n, n, |i, j| creal(if i == j { w - T::one() } else { w }))
        }
        Preset::Delta { alpha } => {
            if !alpha.is_finite() {
                return Err(BoundaryError::BadParameter {
                    name: "alpha",
                    reason: "must be finite".into(),
                });
            }
            let (a, b) = delta_ks_pair(*alpha, n);
            return bc_from_ks_pair(&a, &b, tol);
        }
        Preset::Mixed { dirichlet } => {
            if dirichlet.len() != n {
                return Err(BoundaryError::BadParameter {
                    name: "mask",
                    reason: format!("expected {n} entries, found {}", dirichlet.len()),
                });
            }
            let d: Vec<T> = dirichlet
                .iter()
                .map(|&m| if m { -T::one() } else { T::one() })
                .collect();
            CMatrix::from_real_diagonal(&d)
        }
    };
    bc_from_unitary(&u, tol)
}

/// Rows `ψ_i − ψ_{i+1} = 0` for `i < n` and `Σψ′_i − αψ_1 = 0`.
fn delta_ks_pair<T: Real>(alpha: T, n: usize) -> (CMatrix<T>, CMatrix<T>) {
    let mut a = CMatrix::zeros(n, n);
    let mut b = CMatrix::zeros(n, n);
    for i in 0..n - 1 {
        a[(i, i)] = creal(T::one());
        a[(i, i + 1)] = creal(-T::one());
    }
    a[(n - 1, 0)] = creal(-alpha);
    for j in 0..n {
        b[(n - 1, j)] = creal(T::one());
    }
    (a, b)
}

/// The high-energy limit `Û` of the scattering matrix: eigenvalues of `U`
/// within `eig_cluster_tol` of `−1` map to `−1`, all others to `+1`.
/// Computed as `𝕀 − 2Π₋` with `Π₋` the spectral projection onto that cluster.
pub fn spectral_asymptotic_map<T: Real>(
    u: &CMatrix<T>,
    tol: &Tolerance<T>,
) -> Result<CMatrix<T>, BoundaryError> {
    let eig = unitary_eig(u, tol).map_err(unitary_error)?;
    let minus_one = creal(-T::one());
    let idx: Vec<usize> = (0..u.nrows())
        .filter(|&j| (eig.eigenvalues[j] - minus_one).norm() <= tol.eig_cluster_tol)
        .collect();
    let v = eig.vectors.select_columns(&idx);
    let proj = &v * &v.adjoint();
    Ok(&CMatrix::identity(u.nrows()) - &proj.scale_real(T::lit(2.0)))
}

/// A bound state of the zero-potential star graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState<T> {
    /// Decay rate: the eigenfunction is `e^{−κx}` on each edge.
    pub kappa: T,
    /// `λ = −κ²`.
    pub energy: T,
    pub multiplicity: usize,
}

/// Bound states for zero potential: one per eigenphase `φ` of `U` with
/// `tan(φ/2) > 0`, at `κ = tan(φ/2)`. Hermitian `U` has none.
pub fn zero_potential_bound_states<T: Real>(
    u: &CMatrix<T>,
    tol: &Tolerance<T>,
) -> Result<Vec<BoundState<T>>, BoundaryError> {
    let eig = unitary_eig(u, tol).map_err(unitary_error)?;
    let minus_one = creal(-T::one());
    let mut kappas: Vec<T> = eig
        .eigenvalues
        .iter()
        .filter(|z| (**z - minus_one).norm() > tol.eig_cluster_tol && z.im > tol.structural_tol)
        .map(|z| z.im / (T::one() + z.re))
        .collect();
    kappas.sort_by(|a, b| a.partial_cmp(b).expect("finite kappa"));

    let mut out: Vec<BoundState<T>> = Vec::new();
    let merge = T::lit(1e-9);
    for kappa in kappas {
        match out.last_mut() {
            Some(last) if (kappa - last.kappa).abs() <= merge * T::one().max(kappa) => {
                last.multiplicity += 1
            }
            _ => out.push(BoundState {
                kappa,
                energy: -kappa * kappa,
                multiplicity: 1,
            }),
        }
    }
    Ok(out)
}

/// `|det[k(U+𝕀) − (U−𝕀)]|` divided by `Π_j (|k|·‖(U+𝕀)e_j‖ + ‖(U−𝕀)e_j‖)`,
/// which bounds it by Hadamard's inequality, so the result lies in `[0, 1]`.
/// Vanishes where the zero-potential scattering matrix has a pole.
pub fn normalized_pole_determinant<T: Real>(
    u: &CMatrix<T>,
    k: Complex<T>,
) -> Result<T, BoundaryError> {
    let n = u.require_square()?;
    let id = CMatrix::identity(n);
    let up = u + &id;
    let um = u - &id;
    let m = &up.scale(k) - &um;
    let det = determinant(&m)?;
    let col_norm =
        |a: &CMatrix<T>, j: usize| a.column(j).iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    let scale: T = (0..n)
        .map(|j| k.norm() * col_norm(&up, j) + col_norm(&um, j))
        .fold(T::one(), |acc, x| acc * x);
    if scale == T::zero() {
        return Ok(T::zero());
    }
    Ok(det.norm() / scale)
}
