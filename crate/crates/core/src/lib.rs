//! Hermitian symplectic geometry and scattering on star graphs.
//!
//! * [`matrix`]: dense complex matrices, Jacobi eigensolver, Gram–Schmidt, LU.
//! * [`hsg`]: hermitian symplectic spaces, signatures, canonical bases and the
//!   identification of Lagrange planes with the unitary group.
//! * [`boundary`]: self-adjoint vertex conditions parameterized by `U ∈ U(n)`.
//! * [`scattering`]: Jost solutions, the coefficient matrices `M±` and the
//!   scattering matrix `S(k)` of a star graph.
//!
//! Everything is generic over the real scalar ([`Real`], implemented for
//! `f32` and `f64`); the aliases below fix the double-precision instances.

pub mod boundary;
pub mod hsg;
pub mod matrix;
pub mod random;
pub mod scalar;
pub mod scattering;

pub use num_complex::Complex;
pub use scalar::{cplx, Real};

/// Double-precision complex scalar.
pub type C64 = Complex<f64>;
pub type ComplexMatrix = matrix::CMatrix<f64>;
pub type ComplexMatrix32 = matrix::CMatrix<f32>;
pub type Tolerance = matrix::Tolerance<f64>;
pub type HermitianSymplecticSpace = hsg::HermitianSymplecticSpace<f64>;
pub type Subspace = hsg::Subspace<f64>;
pub type BoundaryConditions = boundary::BoundaryConditions<f64>;
pub type ProjectionPair = boundary::ProjectionPair<f64>;
pub type Potential = scattering::Potential<f64>;
pub type StarGraph = scattering::StarGraph<f64>;
pub type ScatteringResult = scattering::ScatteringResult<f64>;
