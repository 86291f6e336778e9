//! Exact scalars over the rationals or a prime field, dense matrices, and
//! subspaces in reduced row-echelon form.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{
    add_vectors, axpy, is_zero_vector, scale_vector, sub_vectors, unit_vector, zero_vector, Matrix, Vector,
};
pub use scalar::{Field, Scalar, MAX_PRIME};
pub use subspace::Subspace;
