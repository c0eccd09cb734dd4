//! Test-only oracles and generators for the workspace test suites.
//!
//! Nothing here is wired into the library's own computation paths: the
//! point is an independent route to the same answers. Eigenvalues come from
//! the exact rational characteristic polynomial, isolated with Sturm
//! sequences and narrowed by bisection, so agreement with the floating
//! Jacobi solver is evidence rather than tautology.

pub mod exact;
pub mod gen;

pub use exact::{rational_eigenvalues, EigenvalueBracket};
