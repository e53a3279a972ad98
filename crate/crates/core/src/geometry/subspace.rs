//! Affine subspaces base + span_C(directions) with orthonormal direction
//! frames; the slices the recursive boundary solvers work in.

use super::orthonormal::gram_residual;
use super::vector::CVector;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tol;

#[derive(Clone, Debug)]
pub struct AffineSubspace<R> {
    base: CVector<R>,
    directions: Vec<CVector<R>>,
}

impl<R: Real> AffineSubspace<R> {
    /// Directions must be orthonormal (checked) and match the base dimension.
    pub fn new(base: CVector<R>, directions: Vec<CVector<R>>) -> Result<Self> {
        let n = base.dim();
        for d in &directions {
            if d.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: d.dim(),
                });
            }
        }
        if directions.len() > n {
            return Err(Error::invalid("more directions than ambient dimension"));
        }
        let residual = gram_residual(&directions);
        if residual > tol::linear::<R>() {
            return Err(Error::NotOrthonormal {
                residual: residual.as_f64(),
            });
        }
        Ok(Self { base, directions })
    }

    /// The whole of ℂ^n through `base`, framed by the standard basis.
    pub fn full_space(base: CVector<R>) -> Self {
        let n = base.dim();
        Self {
            directions: (0..n).map(|k| CVector::standard(n, k)).collect(),
            base,
        }
    }

    /// Complex dimension of the slice.
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn base(&self) -> &CVector<R> {
        &self.base
    }

    pub fn directions(&self) -> &[CVector<R>] {
        &self.directions
    }

    /// Intrinsic coordinates of (the projection of) `z`:
    /// w_k = <z - base, d_k>.
    pub fn to_local(&self, z: &CVector<R>) -> CVector<R> {
        let rel = z.sub(&self.base);
        CVector::new(self.directions.iter().map(|d| rel.inner(d)).collect())
    }

    /// base + Σ_k w_k d_k.
    pub fn embed(&self, local: &CVector<R>) -> CVector<R> {
        assert_eq!(local.dim(), self.dim(), "local coordinate dimension");
        let mut out = self.base.clone();
        for (w, d) in local.iter().zip(self.directions.iter()) {
            out = out.add(&d.scale(*w));
        }
        out
    }

    /// Distance from `z` to the slice.
    pub fn distance_to(&self, z: &CVector<R>) -> R {
        self.embed(&self.to_local(z)).dist(z)
    }

    /// Whether `z` lies on the slice within the geometric tolerance.
    pub fn contains(&self, z: &CVector<R>) -> bool {
        self.distance_to(z) <= tol::geometric::<R>() * (R::one() + z.norm())
    }
}

#[cfg(test)]
mod tests {
    use num_complex::Complex;

    use super::*;

    type C = Complex<f64>;
    type V = CVector<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn local_roundtrip_on_slice() {
        let base = V::new(vec![c(0.5, 0.0), c(0.0, 0.0)]);
        let slice = AffineSubspace::new(base.clone(), vec![V::standard(2, 1)]).unwrap();
        let z = V::new(vec![c(0.5, 0.0), c(0.3, -0.4)]);
        assert!(slice.contains(&z));
        let w = slice.to_local(&z);
        assert_eq!(w.dim(), 1);
        assert!((w[0] - c(0.3, -0.4)).norm() < 1e-14);
        assert!(slice.embed(&w).dist(&z) < 1e-14);
    }

    #[test]
    fn off_slice_point_detected() {
        let base = V::zeros(2);
        let slice = AffineSubspace::new(base, vec![V::standard(2, 0)]).unwrap();
        let z = V::new(vec![c(0.1, 0.0), c(0.2, 0.0)]);
        assert!(!slice.contains(&z));
        assert!((slice.distance_to(&z) - 0.2).abs() < 1e-14);
    }

    #[test]
    fn skewed_directions_rejected() {
        let base = V::zeros(2);
        let d = V::new(vec![c(0.8, 0.0), c(0.6, 0.0)]);
        let e = V::standard(2, 0);
        assert!(AffineSubspace::new(base, vec![d, e]).is_err());
    }
}
