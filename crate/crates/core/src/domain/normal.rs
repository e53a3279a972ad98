//! Outward supporting covectors at boundary points.
//!
//! For a convex shape the returned unit covector nu satisfies
//! Re<z - p, nu> < 0 on the whole domain. For the slit plane (not convex)
//! the complex hyperplane {z : <z - p, nu> = 0} = {p} still misses the
//! domain, which is the property downstream consumers certify.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::geometry::CVector;
use crate::scalar::Real;
use crate::tol;

use super::{ellipsoid_value, hull_gauge_value, DomainSpec, Shape};

/// Signed boundary residual: negative inside, ~0 on the boundary, positive
/// outside (where the complement has interior). Not a distance in general;
/// comparable between perturbed evaluations of the same shape.
fn violation<R: Real>(d: &DomainSpec<R>, z: &CVector<R>) -> R {
    match d.shape() {
        Shape::EuclideanBall { center, radius } => z.dist(center) - *radius,
        Shape::Polydisc { center, radii } => z
            .iter()
            .zip(center.iter())
            .zip(radii.iter())
            .map(|((zj, cj), &r)| (zj - cj).norm() - r)
            .fold(R::neg_infinity(), |a, t| a.max(t)),
        Shape::HalfspacePolytope { normals, offsets } => normals
            .iter()
            .zip(offsets.iter())
            .map(|(a, &b)| (z.inner(a).re - b) / a.norm())
            .fold(R::neg_infinity(), |a, t| a.max(t)),
        Shape::ComplexEllipsoid { exponents } => {
            ellipsoid_value(exponents, z.as_slice()) - R::one()
        }
        Shape::RightHalfPlane => -z[0].re,
        Shape::SlitPlane => {
            let w = z[0];
            if w.re >= R::zero() {
                -w.im.abs()
            } else {
                -w.norm()
            }
        }
        Shape::CoordinateDiscHull { center, scales } => {
            hull_gauge_value(center, scales, z) - R::one()
        }
        Shape::Product { factors } => factors
            .iter()
            .enumerate()
            .map(|(j, f)| violation(f, &CVector::new(vec![z[j]])))
            .fold(R::neg_infinity(), |a, t| a.max(t)),
        Shape::AffineImage { map, inner } => violation(inner, &map.apply_inverse(z)),
    }
}

fn not_on_boundary() -> Error {
    Error::OutsideDomain {
        context: "point is not on the domain boundary",
    }
}

/// Outward unit supporting covector at boundary point `p`. At corners
/// (several active constraints) the point is nudged outward along the sum
/// of the active normals and the most violated constraint wins, ties to the
/// lowest index, making the choice deterministic.
pub fn supporting_normal<R: Real>(d: &DomainSpec<R>, p: &CVector<R>) -> Result<CVector<R>> {
    if p.dim() != d.dim() {
        return Err(Error::DimensionMismatch {
            expected: d.dim(),
            got: p.dim(),
        });
    }
    let tol_b = tol::geometric::<R>() * (R::one() + p.norm());
    if violation(d, p).abs() > tol_b {
        return Err(not_on_boundary());
    }
    let nudge = R::of(1e-9);
    match d.shape() {
        Shape::EuclideanBall { center, .. } => {
            let delta = p.sub(center);
            delta
                .normalized(R::of(1e-14))
                .ok_or_else(|| Error::invalid("boundary point coincides with the ball center"))
        }
        Shape::Polydisc { center, radii } => {
            let mut active: Vec<(usize, Complex<R>)> = Vec::new();
            for (j, &r) in radii.iter().enumerate() {
                let gap = p[j] - center[j];
                if (gap.norm() - r).abs() <= tol_b {
                    let phase = if gap.norm() > R::zero() {
                        gap / gap.norm()
                    } else {
                        Complex::new(R::one(), R::zero())
                    };
                    active.push((j, phase));
                }
            }
            let (j, phase) = match active.len() {
                0 => return Err(not_on_boundary()),
                1 => active[0],
                _ => {
                    let mut dirsum = CVector::zeros(d.dim());
                    for &(j, phase) in &active {
                        dirsum = dirsum.add(&CVector::standard(d.dim(), j).scale(phase));
                    }
                    let dir = dirsum.normalized(R::of(1e-14)).expect("active set nonempty");
                    let probe = p.add(&dir.scale_re(nudge));
                    let mut winner = active[0];
                    let mut best = R::neg_infinity();
                    for &(j, phase) in &active {
                        let v = (probe[j] - center[j]).norm() - radii[j];
                        if v > best {
                            best = v;
                            winner = (j, phase);
                        }
                    }
                    winner
                }
            };
            Ok(CVector::standard(d.dim(), j).scale(phase))
        }
        Shape::HalfspacePolytope { normals, offsets } => {
            let mut active: Vec<usize> = Vec::new();
            for (i, (a, &b)) in normals.iter().zip(offsets.iter()).enumerate() {
                let margin = (p.inner(a).re - b) / a.norm();
                if margin.abs() <= tol_b {
                    active.push(i);
                }
            }
            let i = match active.len() {
                0 => return Err(not_on_boundary()),
                1 => active[0],
                _ => {
                    let mut dirsum = CVector::zeros(d.dim());
                    for &i in &active {
                        let a = &normals[i];
                        dirsum = dirsum.add(&a.scale_re(a.norm().recip()));
                    }
                    let dir = dirsum
                        .normalized(R::of(1e-14))
                        .ok_or_else(|| Error::invalid("active normals cancel at a corner"))?;
                    let probe = p.add(&dir.scale_re(nudge));
                    let mut winner = active[0];
                    let mut best = R::neg_infinity();
                    for &i in &active {
                        let a = &normals[i];
                        let v = (probe.inner(a).re - offsets[i]) / a.norm();
                        if v > best {
                            best = v;
                            winner = i;
                        }
                    }
                    winner
                }
            };
            Ok(normals[i].scale_re(normals[i].norm().recip()))
        }
        Shape::ComplexEllipsoid { exponents } => {
            let two = R::of(2.0);
            let g = CVector::new(
                exponents
                    .iter()
                    .zip(p.iter())
                    .map(|(&m, zj)| {
                        let r2 = zj.norm_sqr();
                        if r2 < R::of(1e-300) {
                            Complex::new(R::zero(), R::zero())
                        } else {
                            *zj * (two * m * r2.powf(m - R::one()))
                        }
                    })
                    .collect(),
            );
            g.normalized(R::of(1e-14))
                .ok_or_else(|| Error::invalid("vanishing gradient on the ellipsoid boundary"))
        }
        Shape::RightHalfPlane => Ok(CVector::new(vec![Complex::new(-R::one(), R::zero())])),
        Shape::SlitPlane => Ok(CVector::new(vec![Complex::new(R::one(), R::zero())])),
        Shape::CoordinateDiscHull { center, scales } => {
            let mut entries = Vec::with_capacity(d.dim());
            for (j, &s) in scales.iter().enumerate() {
                let gap = p[j] - center[j];
                let n = gap.norm();
                entries.push(if n > R::of(1e-14) {
                    gap / (n * s)
                } else {
                    Complex::new(R::zero(), R::zero())
                });
            }
            CVector::new(entries)
                .normalized(R::of(1e-14))
                .ok_or_else(|| Error::invalid("hull subgradient vanished"))
        }
        Shape::Product { factors } => {
            let mut active: Vec<(usize, CVector<R>)> = Vec::new();
            for (j, f) in factors.iter().enumerate() {
                let zj = CVector::new(vec![p[j]]);
                if violation(f, &zj).abs() <= tol_b {
                    active.push((j, supporting_normal(f, &zj)?));
                }
            }
            let (j, nu) = match active.len() {
                0 => return Err(not_on_boundary()),
                1 => active.swap_remove(0),
                _ => {
                    let mut dirsum = CVector::zeros(d.dim());
                    for (j, nu) in &active {
                        dirsum =
                            dirsum.add(&CVector::standard(d.dim(), *j).scale(nu[0]));
                    }
                    let dir = dirsum.normalized(R::of(1e-14)).expect("active set nonempty");
                    let probe = p.add(&dir.scale_re(nudge));
                    let mut winner = 0usize;
                    let mut best = R::neg_infinity();
                    for (idx, (j, _)) in active.iter().enumerate() {
                        let v = violation(&factors[*j], &CVector::new(vec![probe[*j]]));
                        if v > best {
                            best = v;
                            winner = idx;
                        }
                    }
                    active.swap_remove(winner)
                }
            };
            Ok(CVector::standard(d.dim(), j).scale(nu[0]))
        }
        Shape::AffineImage { map, inner } => {
            let nu_inner = supporting_normal(inner, &map.apply_inverse(p))?;
            let nu = map.linear_inverse().adjoint().mul_vec(&nu_inner);
            nu.normalized(R::of(1e-14))
                .ok_or_else(|| Error::invalid("pulled-back normal vanished"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{boundary_distance, sample_interior, support_value};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type V = CVector<f64>;
    type C = Complex<f64>;

    fn v(entries: &[(f64, f64)]) -> V {
        V::new(entries.iter().map(|&(re, im)| C::new(re, im)).collect())
    }

    #[test]
    fn ball_normal_is_radial() {
        let d = DomainSpec::ball(v(&[(1.0, 0.0)]), 2.0).unwrap();
        let p = v(&[(3.0, 0.0)]);
        let nu = supporting_normal(&d, &p).unwrap();
        assert!((nu[0] - C::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn polydisc_face_normal() {
        let d = DomainSpec::polydisc(V::zeros(2), vec![1.0, 1.0]).unwrap();
        let p = v(&[(0.0, 1.0), (0.5, 0.0)]);
        let nu = supporting_normal(&d, &p).unwrap();
        // Only the first disc is active; normal is the phase i in slot 0.
        assert!((nu[0] - C::new(0.0, 1.0)).norm() < 1e-12);
        assert!(nu[1].norm() < 1e-12);
    }

    #[test]
    fn polydisc_corner_is_deterministic() {
        let d = DomainSpec::polydisc(V::zeros(2), vec![1.0, 1.0]).unwrap();
        let p = v(&[(1.0, 0.0), (1.0, 0.0)]);
        let a = supporting_normal(&d, &p).unwrap();
        let b = supporting_normal(&d, &p).unwrap();
        assert!(a.sub(&b).norm() == 0.0);
        // Exactly one slot carries the covector.
        let nonzero = (0..2).filter(|&j| a[j].norm() > 1e-12).count();
        assert_eq!(nonzero, 1);
    }

    #[test]
    fn normals_support_random_balls_and_polytopes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let square = DomainSpec::polytope(
            vec![
                v(&[(1.0, 0.0)]),
                v(&[(-1.0, 0.0)]),
                v(&[(0.0, 1.0)]),
                v(&[(0.0, -1.0)]),
            ],
            vec![1.0, 1.0, 1.0, 1.0],
        )
        .unwrap();
        let ball = DomainSpec::ball(v(&[(0.2, -0.1), (0.0, 0.3)]), 1.3).unwrap();
        for d in [square, ball] {
            for _ in 0..50 {
                let q = sample_interior(&d, &mut rng).unwrap();
                let dist = boundary_distance(&d, &q).unwrap();
                // March to the boundary along a random interior ray by
                // reusing the nearest-contact machinery.
                let contact = crate::domain::nearest_boundary_in_slice(
                    &d,
                    &crate::geometry::AffineSubspace::full_space(q.clone()),
                    &q,
                )
                .unwrap();
                assert!((contact.distance - dist).abs() < 1e-12);
                let nu = supporting_normal(&d, &contact.point).unwrap();
                // Support inequality at the contact: h_D(nu) equals
                // Re<p, nu> up to tolerance.
                let h = support_value(&d, &nu).unwrap();
                let attained = contact.point.inner(&nu).re;
                assert!(
                    h - attained <= 1e-7 * (1.0 + h.abs()),
                    "h={h} attained={attained}"
                );
            }
        }
    }

    #[test]
    fn ellipsoid_normal_matches_ball_case() {
        let d = DomainSpec::complex_ellipsoid(vec![1.0, 1.0]).unwrap();
        let s = 1.0 / 2.0_f64.sqrt();
        let p = v(&[(s, 0.0), (0.0, s)]);
        let nu = supporting_normal(&d, &p).unwrap();
        // For the unit ball the normal is radial.
        assert!(nu.sub(&p).norm() < 1e-10);
    }

    #[test]
    fn interior_point_rejected() {
        let d = DomainSpec::ball(V::zeros(1), 1.0).unwrap();
        assert!(supporting_normal(&d, &v(&[(0.2, 0.0)])).is_err());
    }
}
