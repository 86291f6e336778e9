//! Canonical representatives, adapted-basis discovery, reduction to normal
//! form and a brute-force isomorphism oracle over prime fields.

pub mod expr;
pub mod iso;
pub mod normal_form;
pub mod registry;

pub use expr::Expr;
pub use iso::{adapted_orbits, iso_bruteforce, IsoResult};
pub use normal_form::{classify, find_adapted_basis, AdaptedBasis, ClassificationResult};
pub use registry::{audit, find, fit, identity_params, instantiate, registry, verify_representative, Representative};
