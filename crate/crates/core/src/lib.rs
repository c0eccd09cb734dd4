//! Certified vanishing of group cohomology with Banach coefficients via
//! weighted spectral gaps of links.
//!
//! The pipeline: build a weighted simplicial complex, measure the random
//! walk spectra of its links, turn those into contraction bounds against
//! the geometry of the coefficient Banach space, and descend the bounds
//! through skeleta. A separate lab verifies the operator identities the
//! argument rests on numerically, and a small random-group module applies
//! the same machinery to triangular presentations.

pub mod action;
pub mod banach;
pub mod certify;
pub mod cochain;
pub mod coeff;
pub mod complex;
pub mod error;
pub mod graph;
pub mod io;
pub mod matrix;
pub mod randgroup;
pub mod rng;
pub mod spectral;
pub mod verify;

pub use action::{orbit_data, simplex_orbits, GroupAction, OrbitData, SimplexOrbit};
pub use banach::{theta_of_p, BanachClassSpec, CurveModulus};
pub use certify::{
    certify_descent, certify_local, complex_fingerprint, conclude, nowak_gate_constant,
    Certificate, ConcludeFlags, Conclusions, CriterionId,
};
pub use cochain::{Cochain, CochainSpace, Localized, Side};
pub use coeff::CoefficientSpace;
pub use complex::SimplicialComplex;
pub use error::{Error, Result};
pub use graph::WeightedGraph;
pub use matrix::{jacobi_eigen, Matrix, SymEigen};
pub use randgroup::{
    asymptotic_report, inverse_letter, letter_name, link_expansion_experiment, relator_space,
    relator_space_count, sample_presentation_binomial, sample_presentation_density,
    sample_presentation_with_count, zuk_link, AsymptoticReport, ExperimentRow, ExperimentSummary,
    Presentation, Relator, RelatorIter,
};
pub use rng::Rng;
pub use spectral::{
    descent_map, expander_profile, min_link_profiles, spectrum, DescentDirection, DescentInterval,
    ExpanderProfile, LinkProfile, LinkSurvey, Sided, SpectralProfile,
};
pub use verify::{verify_all, verify_identity, Identity, VerificationReport};
