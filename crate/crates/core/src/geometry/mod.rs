//! Complex linear algebra: vectors, matrices, orthonormal frames, affine
//! maps, and affine slices. Everything downstream builds on this module.

mod affine;
mod matrix;
mod orthonormal;
mod subspace;
mod vector;

pub use affine::{apply_affine, ComplexAffineMap};
pub use matrix::CMatrix;
pub use orthonormal::{gram_residual, orthonormal_complement, orthonormalize, unitary_to_standard};
pub use subspace::AffineSubspace;
pub use vector::{hermitian_inner, CVector};
