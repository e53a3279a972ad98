//! Uniform interior samplers.

use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::geometry::CVector;
use crate::scalar::Real;

use super::{DomainSpec, Shape};

/// One standard gaussian via Box-Muller.
fn gauss<G: Rng + ?Sized>(rng: &mut G) -> f64 {
    let u1: f64 = rng.gen_range(1e-300..1.0);
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

/// Draws a point uniformly at random from the interior. Balls, polydiscs,
/// products, and affine images have direct constructions (affine maps have
/// constant Jacobian, so uniformity survives); other bounded shapes fall
/// back to rejection from the bounding box. Unbounded domains are rejected.
pub fn sample_interior<R: Real, G: Rng + ?Sized>(
    d: &DomainSpec<R>,
    rng: &mut G,
) -> Result<CVector<R>> {
    match d.shape() {
        Shape::EuclideanBall { center, radius } => {
            let n = d.dim();
            loop {
                let mut entries = Vec::with_capacity(n);
                let mut norm2 = 0.0f64;
                for _ in 0..n {
                    let (a, b) = (gauss(rng), gauss(rng));
                    norm2 += a * a + b * b;
                    entries.push((a, b));
                }
                if norm2 < 1e-280 {
                    continue;
                }
                let u: f64 = rng.gen();
                let scale = u.powf(1.0 / (2.0 * n as f64)) / norm2.sqrt();
                let point = CVector::new(
                    entries
                        .iter()
                        .map(|&(a, b)| Complex::new(R::of(a * scale), R::of(b * scale)))
                        .collect(),
                )
                .scale_re(*radius)
                .add(center);
                if d.contains(&point) {
                    return Ok(point);
                }
            }
        }
        Shape::Polydisc { center, radii } => {
            let mut entries = Vec::with_capacity(d.dim());
            for (c, &r) in center.iter().zip(radii.iter()) {
                entries.push(c + planar_disc_point(rng) * r);
            }
            let point = CVector::new(entries);
            if d.contains(&point) {
                Ok(point)
            } else {
                // Boundary collision has probability zero; resample.
                sample_interior(d, rng)
            }
        }
        Shape::Product { factors } => {
            let mut entries = Vec::with_capacity(factors.len());
            for f in factors {
                entries.push(sample_interior(f, rng)?[0]);
            }
            Ok(CVector::new(entries))
        }
        Shape::AffineImage { map, inner } => Ok(map.apply(&sample_interior(inner, rng)?)),
        _ => {
            if !d.is_bounded() {
                return Err(Error::Unbounded {
                    context: "uniform sampling needs a bounded domain",
                });
            }
            let bx = d.bounding_box()?;
            for _ in 0..10_000_000u64 {
                let reals: Vec<f64> = bx
                    .iter()
                    .map(|&(lo, hi)| {
                        let u: f64 = rng.gen();
                        lo.as_f64() + u * (hi.as_f64() - lo.as_f64())
                    })
                    .collect();
                let point = CVector::new(
                    reals
                        .chunks_exact(2)
                        .map(|p| Complex::new(R::of(p[0]), R::of(p[1])))
                        .collect(),
                );
                if d.contains(&point) {
                    return Ok(point);
                }
            }
            Err(Error::NonConvergence {
                context: "rejection sampling exhausted its attempt budget",
            })
        }
    }
}

fn planar_disc_point<R: Real, G: Rng + ?Sized>(rng: &mut G) -> Complex<R> {
    let u: f64 = rng.gen();
    let theta: f64 = rng.gen::<f64>() * 2.0 * std::f64::consts::PI;
    let r = u.sqrt();
    Complex::new(R::of(r * theta.cos()), R::of(r * theta.sin()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type V = CVector<f64>;

    #[test]
    fn samples_land_inside() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let shapes: Vec<DomainSpec<f64>> = vec![
            DomainSpec::ball(V::zeros(2), 0.7).unwrap(),
            DomainSpec::polydisc(V::zeros(2), vec![1.0, 0.5]).unwrap(),
            DomainSpec::complex_ellipsoid(vec![1.0, 2.5]).unwrap(),
            DomainSpec::coordinate_disc_hull(V::zeros(2), vec![0.5, 1.5]).unwrap(),
            DomainSpec::polytope(
                vec![
                    V::new(vec![Complex::new(1.0, 0.0)]),
                    V::new(vec![Complex::new(-1.0, 0.0)]),
                    V::new(vec![Complex::new(0.0, 1.0)]),
                    V::new(vec![Complex::new(0.0, -1.0)]),
                ],
                vec![1.0, 1.0, 1.0, 1.0],
            )
            .unwrap(),
        ];
        for d in shapes {
            for _ in 0..200 {
                let z = sample_interior(&d, &mut rng).unwrap();
                assert!(d.contains(&z));
            }
        }
    }

    #[test]
    fn ball_sampling_is_roughly_uniform() {
        // In the planar unit disc the expected fraction inside radius 1/2
        // is 1/4.
        let d = DomainSpec::<f64>::unit_disc();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let total = 20_000;
        let inside = (0..total)
            .filter(|_| sample_interior(&d, &mut rng).unwrap().norm() < 0.5)
            .count();
        let frac = inside as f64 / total as f64;
        assert!((frac - 0.25).abs() < 0.02, "{frac}");
    }

    #[test]
    fn unbounded_domains_are_rejected() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(sample_interior(&DomainSpec::<f64>::slit_plane(), &mut rng).is_err());
    }
}
