//! Zero-dimensional solving through multiplication operators on the
//! quotient ring.

pub mod modular;
pub mod newton;
pub mod quotient;
pub mod schur;
pub mod solve;
pub mod summary;
pub mod table;

pub use newton::{NewtonOutcome, NumericSystem};
pub use quotient::{multiplication_matrices, multiplication_matrices_float, QuotientCoeff, QuotientRep, TableProvenance, DEFAULT_CEILING};
pub use schur::ComplexSchur;
pub use solve::{find_point, random_weights, weight_draws, solve_quotient, solve_variety, variant_group, SolutionPoint, SolutionSet, SolveConfig, SolveDiagnostics};
pub use summary::{crosscheck, nonzero_values, orbit_count, potential_of, summarize, CoordinateValue, SolveReport, Stability, Summary};
