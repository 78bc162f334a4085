//! Floquet matrices of the 1-d periodic operator and their spectral
//! invariants.

pub mod invariants;
pub mod matrix;
pub mod verify;

pub use invariants::{
    char_poly_1d, extended_invariants, specialized_invariants, specialized_zeta,
    spectral_invariants, zeta_1d, InvariantSystem, Variant,
};
pub use matrix::{build_floquet_1d, floquet_vars, floquet_with_diagonal, lambda_index, SymbolicMatrix, ZMode};
pub use verify::{
    paired_potential, to_numeric, verify_exact, verify_numeric, IsospectralReport, NumberText,
    PotentialFile, PotentialValue, Residuals,
};
