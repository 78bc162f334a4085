//! Spectral invariants of discrete periodic Schrödinger operators, their
//! closed-form Gröbner bases, and the potentials isospectral to zero.
//!
//! The algebra is generic over the coefficient type (see [`scalar::Scalar`]);
//! the aliases below fix the domains used in practice.

pub mod error;
pub mod floquet;
pub mod grobner;
pub mod lattice;
pub mod poly;
pub mod scalar;
pub mod solver;
pub mod symmetry;

pub use error::{FloqError, Result};
pub use scalar::{Complex64, GaussianRational, Rational};

/// Polynomial with exact rational coefficients.
pub type Poly = poly::MultiPoly<Rational>;
/// Polynomial with exact Gaussian-rational coefficients.
pub type GaussianPoly = poly::MultiPoly<GaussianRational>;
/// Polynomial with complex double coefficients.
pub type ComplexPoly = poly::MultiPoly<Complex64>;

/// Floquet matrix with rational polynomial entries.
pub type Matrix = floquet::SymbolicMatrix<Rational>;

/// Invariant system over the rationals (full, specialized, extended).
pub type Invariants = floquet::InvariantSystem<Rational>;
/// Invariant system over the Gaussian rationals (lattice samples).
pub type GaussianInvariants = floquet::InvariantSystem<GaussianRational>;

/// Closed-form basis over the rationals.
pub type Basis = grobner::GroebnerSystem<Rational>;
/// Closed-form basis over the Gaussian rationals.
pub type GaussianBasis = grobner::GroebnerSystem<GaussianRational>;
