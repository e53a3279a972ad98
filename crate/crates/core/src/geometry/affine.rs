//! Invertible complex-affine maps z -> anchor + M (z - anchor).

use super::matrix::CMatrix;
use super::vector::CVector;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tol;

/// Affine map with the inverse matrix cached at construction.
#[derive(Clone, Debug)]
pub struct ComplexAffineMap<R> {
    anchor: CVector<R>,
    matrix: CMatrix<R>,
    inverse: CMatrix<R>,
}

impl<R: Real> ComplexAffineMap<R> {
    /// Validates shape and invertibility (pivot-ratio condition check).
    pub fn new(anchor: CVector<R>, matrix: CMatrix<R>) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::invalid("affine map matrix must be square"));
        }
        if matrix.rows() != anchor.dim() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                got: anchor.dim(),
            });
        }
        let inverse = matrix.inverse()?;
        Ok(Self {
            anchor,
            matrix,
            inverse,
        })
    }

    pub fn identity(anchor: CVector<R>) -> Self {
        let n = anchor.dim();
        Self {
            anchor,
            matrix: CMatrix::identity(n),
            inverse: CMatrix::identity(n),
        }
    }

    pub fn dim(&self) -> usize {
        self.anchor.dim()
    }

    pub fn anchor(&self) -> &CVector<R> {
        &self.anchor
    }

    pub fn linear(&self) -> &CMatrix<R> {
        &self.matrix
    }

    pub fn linear_inverse(&self) -> &CMatrix<R> {
        &self.inverse
    }

    pub fn apply(&self, z: &CVector<R>) -> CVector<R> {
        self.anchor.add(&self.matrix.mul_vec(&z.sub(&self.anchor)))
    }

    pub fn apply_inverse(&self, z: &CVector<R>) -> CVector<R> {
        self.anchor.add(&self.inverse.mul_vec(&z.sub(&self.anchor)))
    }

    /// Pushes a direction vector through the linear part.
    pub fn apply_linear(&self, v: &CVector<R>) -> CVector<R> {
        self.matrix.mul_vec(v)
    }

    pub fn is_unitary(&self) -> bool {
        self.matrix.unitarity_residual() <= tol::linear::<R>()
    }

    /// Whether the linear part is the identity to working precision.
    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        let id = CMatrix::identity(n);
        let mut worst = R::zero();
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.matrix.get(i, j) - id.get(i, j)).norm());
            }
        }
        worst <= R::of(1e-14)
    }
}

/// anchor + M (z - anchor), with dimension validation.
pub fn apply_affine<R: Real>(map: &ComplexAffineMap<R>, z: &CVector<R>) -> Result<CVector<R>> {
    if z.dim() != map.dim() {
        return Err(Error::DimensionMismatch {
            expected: map.dim(),
            got: z.dim(),
        });
    }
    Ok(map.apply(z))
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
    fn roundtrip_through_inverse() {
        let anchor = V::new(vec![c(0.5, 0.0), c(0.0, -0.2)]);
        let mut m = CMatrix::zeros(2, 2);
        m.set(0, 0, c(1.0, 0.0));
        m.set(1, 0, c(0.3, 0.4));
        m.set(1, 1, c(1.0, 0.0));
        let map = ComplexAffineMap::new(anchor, m).unwrap();
        let z = V::new(vec![c(-0.1, 0.7), c(0.2, 0.2)]);
        let back = map.apply_inverse(&map.apply(&z));
        assert!(back.dist(&z) < 1e-13);
    }

    #[test]
    fn anchor_is_fixed() {
        let anchor = V::new(vec![c(0.5, 0.1)]);
        let mut m = CMatrix::zeros(1, 1);
        m.set(0, 0, c(0.0, 2.0));
        let map = ComplexAffineMap::new(anchor.clone(), m).unwrap();
        assert!(map.apply(&anchor).dist(&anchor) < 1e-15);
    }

    #[test]
    fn singular_linear_part_rejected() {
        let anchor = V::zeros(2);
        let m = CMatrix::zeros(2, 2);
        assert!(ComplexAffineMap::new(anchor, m).is_err());
    }
}
