//! Exact and certified invariant-distance computations used as ground
//! truth: the Poincaré disc, products, the Euclidean ball, the coordinate
//! disc hull, the slit plane via its square-root uniformization, and a
//! two-sided bracket for general convex domains.
//!
//! On convex domains the Carathéodory and Kobayashi distances and the
//! Lempert function coincide, so a lower bound on the first and an upper
//! bound on the last bracket the common value.

use num_complex::Complex;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::{artanh, halfplane_distance, HullGauge};
use crate::domain::{
    nearest_boundary_in_slice, ray_exit, supporting_normal, ConvexityClass, DomainSpec,
};
use crate::error::{Error, Result};
use crate::geometry::{AffineSubspace, CVector};
use crate::scalar::Real;
use crate::tol;

/// Poincaré distance on the unit disc: artanh |(a − b)/(1 − conj(b) a)|.
pub fn poincare_disc<R: Real>(a: Complex<R>, b: Complex<R>) -> Result<R> {
    if a.norm() >= R::one() || b.norm() >= R::one() {
        return Err(Error::OutsideDomain {
            context: "Poincaré formula needs points inside the unit disc",
        });
    }
    let one = Complex::new(R::one(), R::zero());
    let num = (a - b).norm();
    let den = (one - b.conj() * a).norm();
    Ok(artanh(num / den))
}

/// The product formula: the distance in a product is the maximum of the
/// factor distances.
pub fn product_distance<R: Real>(planar_values: &[R]) -> Result<R> {
    if planar_values.is_empty() {
        return Err(Error::invalid("product formula needs at least one factor"));
    }
    Ok(planar_values
        .iter()
        .fold(R::neg_infinity(), |a, &t| a.max(t)))
}

/// Invariant distance of the Euclidean ball, by the classical closed form
/// on the unit ball after recentering:
/// artanh sqrt(1 − (1 − |z|²)(1 − |w|²)/|1 − <z, w>|²).
pub fn ball_distance<R: Real>(
    center: &CVector<R>,
    radius: R,
    z: &CVector<R>,
    w: &CVector<R>,
) -> Result<R> {
    if !(radius > R::zero()) {
        return Err(Error::invalid("ball radius must be positive"));
    }
    let zn = z.sub(center).scale_re(radius.recip());
    let wn = w.sub(center).scale_re(radius.recip());
    if zn.norm() >= R::one() || wn.norm() >= R::one() {
        return Err(Error::OutsideDomain {
            context: "ball formula needs interior points",
        });
    }
    let one = R::one();
    let ip = zn.inner(&wn);
    let den = (Complex::new(one, R::zero()) - ip).norm_sqr();
    let num = (one - zn.norm_sqr()) * (one - wn.norm_sqr());
    let s2 = (one - num / den).max(R::zero());
    Ok(artanh(s2.sqrt()))
}

/// Lempert function of the convex hull of coordinate discs from its center:
/// artanh of the gauge, defined while the gauge is below 1.
pub fn hull_lempert<R: Real>(h: &HullGauge<R>, z: &CVector<R>) -> Option<R> {
    let g = h.gauge(z);
    if g < R::one() {
        Some(artanh(g))
    } else {
        None
    }
}

/// Square root mapping the slit complement bijectively onto the upper
/// half-plane: the argument is taken in (0, 2π).
fn slit_sqrt<R: Real>(z: Complex<R>) -> Result<Complex<R>> {
    if z.im == R::zero() && z.re >= R::zero() {
        return Err(Error::OutsideDomain {
            context: "point lies on the slit",
        });
    }
    let mut theta = z.arg();
    if theta < R::zero() {
        theta = theta + R::PI() + R::PI();
    }
    Ok(Complex::from_polar(z.norm().sqrt(), theta * R::of(0.5)))
}

/// Invariant distance of ℂ ∖ [0, ∞): push both points to the upper
/// half-plane by the branch square root and take the Poincaré distance
/// there.
pub fn slit_plane_distance<R: Real>(z: Complex<R>, w: Complex<R>) -> Result<R> {
    let sz = slit_sqrt(z)?;
    let sw = slit_sqrt(w)?;
    // Rotate the upper half-plane onto the right half-plane.
    let rot = Complex::new(R::zero(), -R::one());
    halfplane_distance(rot * sz, rot * sw)
}

/// How each side of a [`DistanceBracket`] was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BracketMethod {
    /// The two points coincide; the distance is zero on both sides.
    Degenerate,
    /// Best Carathéodory value over supporting half-planes.
    SupportHalfPlane,
    /// Poincaré value of a disc in the complex line through the points.
    SliceDisc,
}

/// Two-sided enclosure of the common invariant distance of a convex domain.
#[derive(Clone, Copy, Debug)]
pub struct DistanceBracket<R: Real> {
    lower: R,
    upper: R,
    lower_method: BracketMethod,
    upper_method: BracketMethod,
}

impl<R: Real> DistanceBracket<R> {
    pub fn new(
        lower: R,
        upper: R,
        lower_method: BracketMethod,
        upper_method: BracketMethod,
    ) -> Result<Self> {
        if !(lower >= R::zero()) {
            return Err(Error::invalid("bracket lower side must be nonnegative"));
        }
        if lower > upper + tol::certificate::<R>() {
            return Err(Error::invalid("bracket sides crossed"));
        }
        Ok(DistanceBracket {
            lower,
            upper,
            lower_method,
            upper_method,
        })
    }

    pub fn lower(&self) -> R {
        self.lower
    }

    /// Possibly +∞ when no slice disc contained both points.
    pub fn upper(&self) -> R {
        self.upper
    }

    pub fn lower_method(&self) -> BracketMethod {
        self.lower_method
    }

    pub fn upper_method(&self) -> BracketMethod {
        self.upper_method
    }

    pub fn contains(&self, value: R) -> bool {
        value >= self.lower - tol::certificate::<R>()
            && value <= self.upper + tol::certificate::<R>()
    }
}

/// Certified bracket of the invariant distance between two interior points
/// of a bounded convex domain.
///
/// Lower side: the domain sits inside each supporting half-plane, so the
/// half-plane distance of the projected pair is a lower bound; supporting
/// planes come from the two nearest-boundary contacts plus `n_support`
/// deterministic ray shots from the midpoint. Upper side: any disc inside
/// the complex line through the points that contains them both gives a
/// Poincaré upper bound; a pattern search moves the disc center to tighten
/// it.
pub fn convex_bracket<R: Real>(
    d: &DomainSpec<R>,
    z: &CVector<R>,
    w: &CVector<R>,
    n_support: usize,
) -> Result<DistanceBracket<R>> {
    if d.class() != ConvexityClass::Convex {
        return Err(Error::Unsupported {
            context: "bracket requires a certified convex domain",
        });
    }
    if !d.contains(z) || !d.contains(w) {
        return Err(Error::OutsideDomain {
            context: "bracket endpoints must be interior",
        });
    }
    let sep = w.sub(z).norm();
    if sep == R::zero() {
        return DistanceBracket::new(
            R::zero(),
            R::zero(),
            BracketMethod::Degenerate,
            BracketMethod::Degenerate,
        );
    }

    let upper = slice_disc_upper(d, z, w, sep);
    let lower = support_lower(d, z, w, n_support)?;
    DistanceBracket::new(
        lower,
        upper,
        BracketMethod::SupportHalfPlane,
        BracketMethod::SliceDisc,
    )
}

fn slice_disc_upper<R: Real>(d: &DomainSpec<R>, z: &CVector<R>, w: &CVector<R>, sep: R) -> R {
    let u = w.sub(z).scale_re(sep.recip());
    let line = match AffineSubspace::new(z.clone(), vec![u]) {
        Ok(l) => l,
        Err(_) => return R::infinity(),
    };
    let zero = Complex::new(R::zero(), R::zero());
    let zeta_w = Complex::new(sep, R::zero());
    let value = |c: Complex<R>| -> Option<R> {
        let p = line.embed(&CVector::new(vec![c]));
        if !d.contains(&p) {
            return None;
        }
        let rho = nearest_boundary_in_slice(d, &line, &p).ok()?.distance;
        if !(rho > R::zero()) {
            return None;
        }
        let a = (zero - c) / rho;
        let b = (zeta_w - c) / rho;
        if a.norm() < R::one() && b.norm() < R::one() {
            poincare_disc(a, b).ok()
        } else {
            None
        }
    };

    let mut best: Option<(Complex<R>, R)> = None;
    for c in [zeta_w * R::of(0.5), zero, zeta_w] {
        if let Some(v) = value(c) {
            if best.as_ref().is_none_or(|&(_, bv)| v < bv) {
                best = Some((c, v));
            }
        }
    }
    let Some((mut c, mut v)) = best else {
        return R::infinity();
    };
    let mut step = sep * R::of(0.5);
    let floor = R::of(1e-7) * (R::one() + sep);
    let mut budget = 400usize;
    while step > floor && budget > 0 {
        budget -= 1;
        let probes = [
            c + Complex::new(step, R::zero()),
            c - Complex::new(step, R::zero()),
            c + Complex::new(R::zero(), step),
            c - Complex::new(R::zero(), step),
        ];
        let mut moved = false;
        for p in probes {
            if let Some(pv) = value(p) {
                if pv < v {
                    c = p;
                    v = pv;
                    moved = true;
                }
            }
        }
        if !moved {
            step *= R::of(0.5);
        }
    }
    v
}

fn support_lower<R: Real>(
    d: &DomainSpec<R>,
    z: &CVector<R>,
    w: &CVector<R>,
    n_support: usize,
) -> Result<R> {
    let mut boundary_points: Vec<CVector<R>> = Vec::new();
    let full_z = AffineSubspace::full_space(z.clone());
    if let Ok(c) = nearest_boundary_in_slice(d, &full_z, z) {
        boundary_points.push(c.point);
    }
    let full_w = AffineSubspace::full_space(w.clone());
    if let Ok(c) = nearest_boundary_in_slice(d, &full_w, w) {
        boundary_points.push(c.point);
    }
    let mid = z.add(w).scale_re(R::of(0.5));
    let mut rng = ChaCha8Rng::seed_from_u64(0xb0a7_5eed);
    let n = d.dim();
    for _ in 0..n_support {
        let mut entries = Vec::with_capacity(n);
        let mut norm2 = 0.0f64;
        for _ in 0..n {
            let g = |rng: &mut ChaCha8Rng| {
                let u1: f64 = rng.gen_range(1e-12..1.0);
                let u2: f64 = rng.gen();
                (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
            };
            let (a, b) = (g(&mut rng), g(&mut rng));
            norm2 += a * a + b * b;
            entries.push(Complex::new(R::of(a), R::of(b)));
        }
        if norm2 < 1e-12 {
            continue;
        }
        let dir = CVector::new(entries).scale_re(R::of(norm2.sqrt()).recip());
        if let Ok(t) = ray_exit(d, &mid, &dir) {
            boundary_points.push(mid.add(&dir.scale_re(t)));
        }
    }

    let mut lower = R::zero();
    for p in &boundary_points {
        let Ok(nu) = supporting_normal(d, p) else {
            continue;
        };
        // phi(zeta) = <p - zeta, nu> maps the supporting half-plane
        // holomorphically onto the right half-plane.
        let fz = p.sub(z).inner(&nu);
        let fw = p.sub(w).inner(&nu);
        if fz.re > R::zero() && fw.re > R::zero() {
            if let Ok(v) = halfplane_distance(fz, fw) {
                lower = lower.max(v);
            }
        }
    }
    Ok(lower)
}
