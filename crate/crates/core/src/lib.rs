//! Minimal bases, scale vectors, and polydisc sandwiches for invariant
//! distances on convex domains in ℂⁿ.
//!
//! The crate is organized bottom-up:
//!
//! - [`geometry`]: complex vectors/matrices, orthonormal frames, affine
//!   maps and slices.
//! - [`domain`]: domain representations (balls, polydiscs, half-space
//!   polytopes, complex ellipsoids, planar oracles, products, affine
//!   images) with membership, boundary-contact solvers, supporting
//!   normals, support functions, and interior samplers.
//! - [`basis`]: the minimal basis and scale vector of a domain at an
//!   interior point, rotation to standard position, the triangular
//!   hyperplane map, and disjointness certificates.
//! - [`bounds`]: the inner/outer polydisc coefficients, the coordinate-disc
//!   gauge, and the boundary-distance lower bounds.
//! - [`oracles`]: closed-form invariant-distance oracles and the two-sided
//!   bracket for general convex domains.
//!
//! All numerics are generic over [`scalar::Real`] (`f32` or `f64`);
//! concrete `f64` aliases are exported below.

// Guards of the form `!(x > limit)` reject NaN together with the
// out-of-range values; the suggested partial_cmp rewrites lose that.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod bounds;
pub mod domain;
pub mod error;
pub mod geometry;
pub mod oracles;
pub mod scalar;
pub mod tol;

pub use error::{Error, Result};
pub use scalar::Real;

/// Complex scalar over `f64`.
pub type C64 = num_complex::Complex<f64>;
/// Complex scalar over `f32`.
pub type C32 = num_complex::Complex<f32>;

pub type CVector64 = geometry::CVector<f64>;
pub type CMatrix64 = geometry::CMatrix<f64>;
pub type AffineMap64 = geometry::ComplexAffineMap<f64>;
pub type Slice64 = geometry::AffineSubspace<f64>;
pub type Domain64 = domain::DomainSpec<f64>;
pub type MinimalBasis64 = basis::MinimalBasis<f64>;
pub type TriangularMap64 = basis::TriangularMap<f64>;
pub type SandwichBox64 = bounds::SandwichBox<f64>;
pub type HullGauge64 = bounds::HullGauge<f64>;
pub type DistanceBracket64 = oracles::DistanceBracket<f64>;
