//! Support functions: h_D(w) = sup_{z in D} Re<z, w> with maximizing points
//! of the closure where the supremum is attained.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::geometry::CVector;
use crate::scalar::Real;

use super::{linprog, DomainSpec, Shape};

/// sup Re<z, w> over the domain. Errs with `Unbounded` when the supremum is
/// infinite and `Unsupported` for shapes without a support oracle.
pub fn support_value<R: Real>(d: &DomainSpec<R>, w: &CVector<R>) -> Result<R> {
    support_with_point(d, w).map(|(h, _)| h)
}

/// A point of the closure attaining the support value.
pub fn support_point<R: Real>(d: &DomainSpec<R>, w: &CVector<R>) -> Result<CVector<R>> {
    support_with_point(d, w).map(|(_, p)| p)
}

fn phase_or_zero<R: Real>(z: Complex<R>) -> Complex<R> {
    let n = z.norm();
    if n > R::zero() {
        z / n
    } else {
        Complex::new(R::zero(), R::zero())
    }
}

fn support_with_point<R: Real>(
    d: &DomainSpec<R>,
    w: &CVector<R>,
) -> Result<(R, CVector<R>)> {
    if w.dim() != d.dim() {
        return Err(Error::DimensionMismatch {
            expected: d.dim(),
            got: w.dim(),
        });
    }
    match d.shape() {
        Shape::EuclideanBall { center, radius } => {
            let nw = w.norm();
            let h = center.inner(w).re + *radius * nw;
            let point = if nw > R::zero() {
                center.add(&w.scale_re(*radius / nw))
            } else {
                center.clone()
            };
            Ok((h, point))
        }
        Shape::Polydisc { center, radii } => {
            let mut h = center.inner(w).re;
            let mut entries = Vec::with_capacity(d.dim());
            for ((c, &r), wj) in center.iter().zip(radii.iter()).zip(w.iter()) {
                h += r * wj.norm();
                entries.push(c + phase_or_zero(*wj) * r);
            }
            Ok((h, CVector::new(entries)))
        }
        Shape::CoordinateDiscHull { center, scales } => {
            // sup over sum_j |d_j|/s_j <= 1 of Re<d, w> = max_j s_j |w_j|.
            let mut best = (R::zero(), 0usize);
            for (j, (&s, wj)) in scales.iter().zip(w.iter()).enumerate() {
                let t = s * wj.norm();
                if t > best.0 {
                    best = (t, j);
                }
            }
            let h = center.inner(w).re + best.0;
            let mut point = center.clone();
            if best.0 > R::zero() {
                let j = best.1;
                point.set(j, point[j] + phase_or_zero(w[j]) * scales[j]);
            }
            Ok((h, point))
        }
        Shape::HalfspacePolytope { normals, offsets } => {
            linprog::polytope_support(normals, offsets, w)
        }
        Shape::RightHalfPlane => {
            let w0 = w[0];
            if w0.im.abs() > R::zero() || w0.re < R::zero() {
                Err(Error::Unbounded {
                    context: "half-plane support in a non-degenerate direction",
                })
            } else {
                Ok((R::zero(), CVector::zeros(1)))
            }
        }
        Shape::SlitPlane => {
            if w.norm() > R::zero() {
                Err(Error::Unbounded {
                    context: "slit plane supports no linear functional",
                })
            } else {
                Ok((R::zero(), CVector::new(vec![Complex::new(-R::one(), R::zero())])))
            }
        }
        Shape::ComplexEllipsoid { .. } => Err(Error::Unsupported {
            context: "support function of a complex ellipsoid",
        }),
        Shape::Product { factors } => {
            let mut h = R::zero();
            let mut entries = Vec::with_capacity(factors.len());
            for (j, f) in factors.iter().enumerate() {
                let wj = CVector::new(vec![w[j]]);
                if wj.norm() > R::zero() {
                    let (hj, pj) = support_with_point(f, &wj)?;
                    h += hj;
                    entries.push(pj[0]);
                } else {
                    entries.push(f.interior_point()?[0]);
                }
            }
            Ok((h, CVector::new(entries)))
        }
        Shape::AffineImage { map, inner } => {
            // h_{A(D)}(w) = Re<a - Ma, w> + h_D(M* w) for A(z) = a + M(z - a).
            let anchor = map.anchor();
            let pulled = map.linear().adjoint().mul_vec(w);
            let (h_inner, p_inner) = support_with_point(inner, &pulled)?;
            let ma = map.linear().mul_vec(anchor);
            let shift = anchor.sub(&ma).inner(w).re;
            Ok((shift + h_inner, map.apply(&p_inner)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{CMatrix, ComplexAffineMap};

    type V = CVector<f64>;
    type C = Complex<f64>;

    fn v(entries: &[(f64, f64)]) -> V {
        V::new(entries.iter().map(|&(re, im)| C::new(re, im)).collect())
    }

    #[test]
    fn ball_support() {
        let d = DomainSpec::ball(v(&[(1.0, 0.0), (0.0, 0.0)]), 2.0).unwrap();
        let w = v(&[(0.0, 0.0), (3.0, 4.0)]);
        // Re<c, w> = 0, r |w| = 10.
        let h = support_value(&d, &w).unwrap();
        assert!((h - 10.0).abs() < 1e-12);
        let p = support_point(&d, &w).unwrap();
        assert!((p.inner(&w).re - h).abs() < 1e-12);
        assert!(p.dist(&v(&[(1.0, 0.0), (0.0, 0.0)])) <= 2.0 + 1e-12);
    }

    #[test]
    fn polydisc_support() {
        let d = DomainSpec::polydisc(V::zeros(2), vec![1.0, 0.5]).unwrap();
        let w = v(&[(1.0, 0.0), (0.0, 2.0)]);
        let h = support_value(&d, &w).unwrap();
        assert!((h - 2.0).abs() < 1e-12);
    }

    #[test]
    fn hull_support_is_max_not_sum() {
        let d = DomainSpec::coordinate_disc_hull(V::zeros(2), vec![1.0, 1.0]).unwrap();
        let w = v(&[(1.0, 0.0), (1.0, 0.0)]);
        let h = support_value(&d, &w).unwrap();
        assert!((h - 1.0).abs() < 1e-12);
    }

    #[test]
    fn half_plane_support_cases() {
        let d = DomainSpec::<f64>::right_half_plane();
        assert!((support_value(&d, &v(&[(1.0, 0.0)])).unwrap()).abs() < 1e-12);
        assert!(support_value(&d, &v(&[(-1.0, 0.0)])).is_err());
        assert!(support_value(&d, &v(&[(0.0, 1.0)])).is_err());
    }

    #[test]
    fn affine_pullback_matches_direct() {
        // Disc |z - 1| < 2 as an affine image of the unit disc.
        let map = ComplexAffineMap::new(v(&[(-1.0, 0.0)]), CMatrix::from_rows(&[v(&[(2.0, 0.0)])]))
            .unwrap();
        let image = DomainSpec::affine_image(map, DomainSpec::unit_disc()).unwrap();
        let direct = DomainSpec::ball(v(&[(1.0, 0.0)]), 2.0).unwrap();
        for w in [v(&[(1.0, 0.0)]), v(&[(0.3, -0.4)]), v(&[(0.0, 2.0)])] {
            let a = support_value(&image, &w).unwrap();
            let b = support_value(&direct, &w).unwrap();
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
    }

    #[test]
    fn product_support_sums_factors() {
        let d = DomainSpec::product(vec![
            DomainSpec::unit_disc(),
            DomainSpec::ball(v(&[(0.0, 1.0)]), 0.5).unwrap(),
        ])
        .unwrap();
        let w = v(&[(2.0, 0.0), (0.0, -1.0)]);
        // First factor: 2. Second: Re<i, w_2> + 0.5 = Re(i * (0 - i*-1)) ...
        // compute directly: Re(c w2_conj) = Re(i * (0 + i)) = Re(i^2) = -1;
        // plus 0.5 * |w_2| = 0.5. Total second factor: -0.5.
        let h = support_value(&d, &w).unwrap();
        assert!((h - 1.5).abs() < 1e-12, "{h}");
    }
}
