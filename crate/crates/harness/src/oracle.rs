//! Closed-form distance dispatch: picks the exact oracle a domain admits,
//! recursing through products and affine images. Domains without a closed
//! form get `None` and callers fall back to the certified bracket.

use minbasis::bounds::halfplane_distance;
use minbasis::domain::Shape;
use minbasis::oracles::{ball_distance, poincare_disc, product_distance, slit_plane_distance};
use minbasis::{CVector64, Domain64};

/// The invariant distance from a closed form, when the shape has one.
/// Returns `None` for shapes without an exact oracle and for points where
/// the oracle rejects (outside the domain).
pub fn exact_distance(d: &Domain64, z: &CVector64, w: &CVector64) -> Option<f64> {
    match d.shape() {
        Shape::EuclideanBall { center, radius } => ball_distance(center, *radius, z, w).ok(),
        Shape::Polydisc { center, radii } => {
            let mut vals = Vec::with_capacity(d.dim());
            for j in 0..d.dim() {
                let a = (z[j] - center[j]) / radii[j];
                let b = (w[j] - center[j]) / radii[j];
                vals.push(poincare_disc(a, b).ok()?);
            }
            product_distance(&vals).ok()
        }
        Shape::Product { factors } => {
            let mut vals = Vec::with_capacity(factors.len());
            for (j, f) in factors.iter().enumerate() {
                let zj = CVector64::new(vec![z[j]]);
                let wj = CVector64::new(vec![w[j]]);
                vals.push(exact_distance(f, &zj, &wj)?);
            }
            product_distance(&vals).ok()
        }
        Shape::RightHalfPlane => halfplane_distance(z[0], w[0]).ok(),
        Shape::SlitPlane => slit_plane_distance(z[0], w[0]).ok(),
        // Invertible affine maps are biholomorphisms, so the distance pulls
        // back unchanged.
        Shape::AffineImage { map, inner } => {
            exact_distance(inner, &map.apply_inverse(z), &map.apply_inverse(w))
        }
        _ => None,
    }
}

/// Whether `exact_distance` will produce values on this domain.
pub fn has_exact_oracle(d: &Domain64) -> bool {
    match d.shape() {
        Shape::EuclideanBall { .. }
        | Shape::Polydisc { .. }
        | Shape::RightHalfPlane
        | Shape::SlitPlane => true,
        Shape::Product { factors } => factors.iter().all(has_exact_oracle),
        Shape::AffineImage { inner, .. } => has_exact_oracle(inner),
        _ => false,
    }
}
