//! Exact computations with finite-dimensional Hom-Lie algebras: axioms,
//! central and derived series, twisting constructions, cochains and
//! coboundaries, filiform deformations, adapted basis changes and the
//! classification of filiform Hom-Lie algebras in low dimension.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod basis_change;
pub mod classification;
pub mod cohomology;
pub mod error;
pub mod exactlin;
pub mod filiform;
pub mod series;
pub mod twisting;

pub use algebra::HomAlgebra;
pub use error::{Error, Result};
pub use exactlin::{Field, Matrix, Scalar, Subspace, Vector};
