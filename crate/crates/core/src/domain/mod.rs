//! Domain representations and their oracles.
//!
//! A [`DomainSpec`] pairs a concrete shape with the convexity class its
//! constructor certifies. Everything downstream (boundary contacts,
//! supporting normals, support functions, samplers) dispatches on the shape.

pub(crate) mod linprog;
mod nearest;
mod normal;
mod sample;
mod support;

pub use nearest::{boundary_distance, nearest_boundary_in_slice, ray_exit, BoundaryContact};
pub use normal::supporting_normal;
pub use sample::sample_interior;
pub use support::{support_point, support_value};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::geometry::{ComplexAffineMap, CVector};
use crate::scalar::Real;

/// Convexity class of a domain, ordered by inclusion: every convex domain is
/// ℂ-convex and every ℂ-convex domain is weakly linearly convex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvexityClass {
    Convex,
    CConvex,
    WeaklyLinearlyConvex,
}

impl ConvexityClass {
    fn rank(self) -> u8 {
        match self {
            ConvexityClass::Convex => 0,
            ConvexityClass::CConvex => 1,
            ConvexityClass::WeaklyLinearlyConvex => 2,
        }
    }

    /// Whether membership in `self` guarantees membership in `other`.
    pub fn implies(self, other: ConvexityClass) -> bool {
        self.rank() <= other.rank()
    }
}

/// Concrete domain shapes. All domains are open.
#[derive(Clone, Debug)]
pub enum Shape<R: Real> {
    /// Intersection of open half-spaces {Re<z, a_i> < b_i}.
    HalfspacePolytope {
        normals: Vec<CVector<R>>,
        offsets: Vec<R>,
    },
    EuclideanBall {
        center: CVector<R>,
        radius: R,
    },
    Polydisc {
        center: CVector<R>,
        radii: Vec<R>,
    },
    /// {z : sum_j |z_j|^(2 m_j) < 1} with every m_j >= 1/2.
    ComplexEllipsoid {
        exponents: Vec<R>,
    },
    /// {z in C : Re z > 0}.
    RightHalfPlane,
    /// C minus the closed ray [0, +inf).
    SlitPlane,
    /// {z : sum_j |z_j - c_j| / s_j < 1}, the convex hull of coordinate
    /// discs through c with radii s_j.
    CoordinateDiscHull {
        center: CVector<R>,
        scales: Vec<R>,
    },
    /// Product of planar factors; coordinate j ranges over factor j.
    Product {
        factors: Vec<DomainSpec<R>>,
    },
    /// A(D) for an invertible complex affine map A.
    AffineImage {
        map: ComplexAffineMap<R>,
        inner: Box<DomainSpec<R>>,
    },
}

/// A validated domain: a shape plus the convexity class and boundedness the
/// constructor established.
#[derive(Clone, Debug)]
pub struct DomainSpec<R: Real> {
    shape: Shape<R>,
    class: ConvexityClass,
    bounded: bool,
    dim: usize,
}

fn require_positive<R: Real>(value: R, what: &str) -> Result<()> {
    if value.is_finite() && value > R::zero() {
        Ok(())
    } else {
        Err(Error::invalid(format!("{what} must be positive and finite")))
    }
}

impl<R: Real> DomainSpec<R> {
    /// Open polytope from half-space data. Validates that faces are
    /// well-formed and the interior is nonempty; boundedness is determined
    /// by coordinate support problems.
    pub fn polytope(normals: Vec<CVector<R>>, offsets: Vec<R>) -> Result<Self> {
        if normals.is_empty() {
            return Err(Error::invalid("polytope needs at least one face"));
        }
        if normals.len() != offsets.len() {
            return Err(Error::DimensionMismatch {
                expected: normals.len(),
                got: offsets.len(),
            });
        }
        let dim = normals[0].dim();
        if dim == 0 {
            return Err(Error::invalid("polytope faces must live in C^n, n >= 1"));
        }
        for a in &normals {
            if a.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: a.dim(),
                });
            }
            if !(a.norm() > R::of(1e-12)) {
                return Err(Error::invalid("polytope face normal is numerically zero"));
            }
        }
        for &b in &offsets {
            if !b.is_finite() {
                return Err(Error::invalid("polytope offsets must be finite"));
            }
        }
        let (_, radius) = linprog::chebyshev_center(&normals, &offsets)?;
        if !(radius > R::of(1e-9)) {
            return Err(Error::InvalidDomain {
                reason: "polytope has empty interior".into(),
            });
        }
        let bounded = linprog::polytope_box(&normals, &offsets).is_ok();
        Ok(DomainSpec {
            shape: Shape::HalfspacePolytope { normals, offsets },
            class: ConvexityClass::Convex,
            bounded,
            dim,
        })
    }

    pub fn ball(center: CVector<R>, radius: R) -> Result<Self> {
        require_positive(radius, "ball radius")?;
        let dim = center.dim();
        if dim == 0 {
            return Err(Error::invalid("ball center must live in C^n, n >= 1"));
        }
        Ok(DomainSpec {
            shape: Shape::EuclideanBall { center, radius },
            class: ConvexityClass::Convex,
            bounded: true,
            dim,
        })
    }

    pub fn polydisc(center: CVector<R>, radii: Vec<R>) -> Result<Self> {
        let dim = center.dim();
        if dim == 0 || radii.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: radii.len(),
            });
        }
        for &r in &radii {
            require_positive(r, "polydisc radius")?;
        }
        Ok(DomainSpec {
            shape: Shape::Polydisc { center, radii },
            class: ConvexityClass::Convex,
            bounded: true,
            dim,
        })
    }

    /// Unit disc in C.
    pub fn unit_disc() -> Self {
        DomainSpec::ball(CVector::zeros(1), R::one()).expect("unit disc is valid")
    }

    pub fn complex_ellipsoid(exponents: Vec<R>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::invalid("ellipsoid needs at least one exponent"));
        }
        let half = R::of(0.5);
        for &m in &exponents {
            if !m.is_finite() || m < half - R::of(1e-12) {
                return Err(Error::invalid("ellipsoid exponents must satisfy m >= 1/2"));
            }
        }
        // m_j >= 1/2 for every j makes the domain convex.
        let dim = exponents.len();
        Ok(DomainSpec {
            shape: Shape::ComplexEllipsoid { exponents },
            class: ConvexityClass::Convex,
            bounded: true,
            dim,
        })
    }

    pub fn right_half_plane() -> Self {
        DomainSpec {
            shape: Shape::RightHalfPlane,
            class: ConvexityClass::Convex,
            bounded: false,
            dim: 1,
        }
    }

    pub fn slit_plane() -> Self {
        DomainSpec {
            shape: Shape::SlitPlane,
            class: ConvexityClass::CConvex,
            bounded: false,
            dim: 1,
        }
    }

    pub fn coordinate_disc_hull(center: CVector<R>, scales: Vec<R>) -> Result<Self> {
        let dim = center.dim();
        if dim == 0 || scales.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: scales.len(),
            });
        }
        for &s in &scales {
            require_positive(s, "disc hull scale")?;
        }
        Ok(DomainSpec {
            shape: Shape::CoordinateDiscHull { center, scales },
            class: ConvexityClass::Convex,
            bounded: true,
            dim,
        })
    }

    pub fn product(factors: Vec<DomainSpec<R>>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::invalid("product needs at least one factor"));
        }
        for f in &factors {
            if f.dim != 1 {
                return Err(Error::invalid("product factors must be planar"));
            }
        }
        let all_convex = factors.iter().all(|f| f.class == ConvexityClass::Convex);
        // A product of planar domains is convex iff every factor is; in
        // general it is only weakly linearly convex (products of C-convex
        // factors need not be C-convex).
        let class = if all_convex {
            ConvexityClass::Convex
        } else {
            ConvexityClass::WeaklyLinearlyConvex
        };
        let bounded = factors.iter().all(|f| f.bounded);
        let dim = factors.len();
        Ok(DomainSpec {
            shape: Shape::Product { factors },
            class,
            bounded,
            dim,
        })
    }

    pub fn affine_image(map: ComplexAffineMap<R>, inner: DomainSpec<R>) -> Result<Self> {
        if map.dim() != inner.dim {
            return Err(Error::DimensionMismatch {
                expected: inner.dim,
                got: map.dim(),
            });
        }
        let class = inner.class;
        let bounded = inner.bounded;
        let dim = inner.dim;
        Ok(DomainSpec {
            shape: Shape::AffineImage {
                map,
                inner: Box::new(inner),
            },
            class,
            bounded,
            dim,
        })
    }

    /// Forget structure: re-tag the domain with a weaker convexity class.
    pub fn with_class(mut self, class: ConvexityClass) -> Result<Self> {
        if !self.class.implies(class) {
            return Err(Error::invalid(
                "cannot narrow a convexity class without a certificate",
            ));
        }
        self.class = class;
        Ok(self)
    }

    pub fn shape(&self) -> &Shape<R> {
        &self.shape
    }

    pub fn class(&self) -> ConvexityClass {
        self.class
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Strict membership test. Points on the boundary are outside.
    pub fn contains(&self, z: &CVector<R>) -> bool {
        if z.dim() != self.dim {
            return false;
        }
        match &self.shape {
            Shape::HalfspacePolytope { normals, offsets } => normals
                .iter()
                .zip(offsets.iter())
                .all(|(a, &b)| z.inner(a).re < b),
            Shape::EuclideanBall { center, radius } => z.dist(center) < *radius,
            Shape::Polydisc { center, radii } => z
                .iter()
                .zip(center.iter())
                .zip(radii.iter())
                .all(|((zj, cj), &r)| (zj - cj).norm() < r),
            Shape::ComplexEllipsoid { exponents } => {
                ellipsoid_value(exponents, z.as_slice()) < R::one()
            }
            Shape::RightHalfPlane => z[0].re > R::zero(),
            Shape::SlitPlane => !(z[0].im == R::zero() && z[0].re >= R::zero()),
            Shape::CoordinateDiscHull { center, scales } => {
                hull_gauge_value(center, scales, z) < R::one()
            }
            Shape::Product { factors } => factors
                .iter()
                .enumerate()
                .all(|(j, f)| f.contains(&CVector::new(vec![z[j]]))),
            Shape::AffineImage { map, inner } => inner.contains(&map.apply_inverse(z)),
        }
    }

    /// A point in the interior: centers where the shape has one, a Chebyshev
    /// center for polytopes, conventional picks for the planar models.
    pub fn interior_point(&self) -> Result<CVector<R>> {
        match &self.shape {
            Shape::HalfspacePolytope { normals, offsets } => {
                let (center, _) = linprog::chebyshev_center(normals, offsets)?;
                Ok(center)
            }
            Shape::EuclideanBall { center, .. }
            | Shape::Polydisc { center, .. }
            | Shape::CoordinateDiscHull { center, .. } => Ok(center.clone()),
            Shape::ComplexEllipsoid { .. } => Ok(CVector::zeros(self.dim)),
            Shape::RightHalfPlane => Ok(CVector::new(vec![Complex::new(R::one(), R::zero())])),
            Shape::SlitPlane => Ok(CVector::new(vec![Complex::new(-R::one(), R::zero())])),
            Shape::Product { factors } => {
                let mut entries = Vec::with_capacity(factors.len());
                for f in factors {
                    entries.push(f.interior_point()?[0]);
                }
                Ok(CVector::new(entries))
            }
            Shape::AffineImage { map, inner } => Ok(map.apply(&inner.interior_point()?)),
        }
    }

    /// Axis-aligned bounding box of the closure, interleaved per real
    /// coordinate as (Re z_1, Im z_1, ...). Errs for unbounded domains.
    pub fn bounding_box(&self) -> Result<Vec<(R, R)>> {
        match &self.shape {
            Shape::HalfspacePolytope { normals, offsets } => {
                linprog::polytope_box(normals, offsets)
            }
            Shape::EuclideanBall { center, radius } => {
                let mut out = Vec::with_capacity(2 * self.dim);
                for c in center.iter() {
                    out.push((c.re - *radius, c.re + *radius));
                    out.push((c.im - *radius, c.im + *radius));
                }
                Ok(out)
            }
            Shape::Polydisc { center, radii } => {
                let mut out = Vec::with_capacity(2 * self.dim);
                for (c, &r) in center.iter().zip(radii.iter()) {
                    out.push((c.re - r, c.re + r));
                    out.push((c.im - r, c.im + r));
                }
                Ok(out)
            }
            Shape::ComplexEllipsoid { exponents } => {
                Ok(vec![(-R::one(), R::one()); 2 * exponents.len()])
            }
            Shape::CoordinateDiscHull { center, scales } => {
                let mut out = Vec::with_capacity(2 * self.dim);
                for (c, &s) in center.iter().zip(scales.iter()) {
                    out.push((c.re - s, c.re + s));
                    out.push((c.im - s, c.im + s));
                }
                Ok(out)
            }
            Shape::RightHalfPlane | Shape::SlitPlane => Err(Error::Unbounded {
                context: "bounding box of an unbounded domain",
            }),
            Shape::Product { factors } => {
                let mut out = Vec::with_capacity(2 * self.dim);
                for f in factors {
                    out.extend(f.bounding_box()?);
                }
                Ok(out)
            }
            Shape::AffineImage { map, inner } => {
                let inner_box = inner.bounding_box()?;
                Ok(affine_box_image(map, &inner_box))
            }
        }
    }
}

/// sum_j |z_j|^(2 m_j), the defining function of a complex ellipsoid.
pub(crate) fn ellipsoid_value<R: Real>(exponents: &[R], z: &[Complex<R>]) -> R {
    exponents
        .iter()
        .zip(z.iter())
        .map(|(&m, zj)| zj.norm_sqr().powf(m))
        .fold(R::zero(), |acc, t| acc + t)
}

/// sum_j |z_j - c_j| / s_j, the gauge of a coordinate disc hull.
pub(crate) fn hull_gauge_value<R: Real>(center: &CVector<R>, scales: &[R], z: &CVector<R>) -> R {
    z.iter()
        .zip(center.iter())
        .zip(scales.iter())
        .map(|((zj, cj), &s)| (zj - cj).norm() / s)
        .fold(R::zero(), |acc, t| acc + t)
}

/// Interval image of a real box under the complex affine map z = a + M(y - a).
fn affine_box_image<R: Real>(map: &ComplexAffineMap<R>, inner_box: &[(R, R)]) -> Vec<(R, R)> {
    let n = map.dim();
    let anchor = map.anchor();
    let m = map.linear();
    let half = R::of(0.5);
    // Midpoints and half-widths of the source box, shifted by the anchor.
    let mids: Vec<R> = inner_box.iter().map(|&(lo, hi)| (lo + hi) * half).collect();
    let halfs: Vec<R> = inner_box.iter().map(|&(lo, hi)| (hi - lo) * half).collect();
    let mut out = Vec::with_capacity(2 * n);
    for j in 0..n {
        // Real rows of the block matrix [[Re M, -Im M], [Im M, Re M]] in the
        // interleaved layout.
        for part in 0..2 {
            let mut mid = if part == 0 { anchor[j].re } else { anchor[j].im };
            let mut rad = R::zero();
            for k in 0..n {
                let e = m.get(j, k);
                let (cr, ci) = if part == 0 {
                    (e.re, -e.im)
                } else {
                    (e.im, e.re)
                };
                let (sr, si) = (mids[2 * k] - anchor[k].re, mids[2 * k + 1] - anchor[k].im);
                mid = mid + cr * sr + ci * si;
                rad = rad + cr.abs() * halfs[2 * k] + ci.abs() * halfs[2 * k + 1];
            }
            out.push((mid - rad, mid + rad));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::CMatrix;

    type V = CVector<f64>;
    type C = Complex<f64>;

    fn v(entries: &[(f64, f64)]) -> V {
        V::new(entries.iter().map(|&(re, im)| C::new(re, im)).collect())
    }

    #[test]
    fn ball_membership_is_strict() {
        let b = DomainSpec::ball(V::zeros(2), 1.0).unwrap();
        assert!(b.contains(&v(&[(0.5, 0.0), (0.0, 0.5)])));
        assert!(!b.contains(&v(&[(1.0, 0.0), (0.0, 0.0)])));
        assert!(!b.contains(&v(&[(2.0, 0.0), (0.0, 0.0)])));
    }

    #[test]
    fn slit_plane_excludes_the_ray() {
        let s = DomainSpec::<f64>::slit_plane();
        assert!(!s.contains(&v(&[(0.0, 0.0)])));
        assert!(!s.contains(&v(&[(3.0, 0.0)])));
        assert!(s.contains(&v(&[(-1.0, 0.0)])));
        assert!(s.contains(&v(&[(3.0, 1e-12)])));
    }

    #[test]
    fn polytope_boundedness_detection() {
        // Square in C^1: bounded.
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
        assert!(square.is_bounded());

        // Single half-space: unbounded.
        let half = DomainSpec::polytope(vec![v(&[(1.0, 0.0)])], vec![0.0]).unwrap();
        assert!(!half.is_bounded());
    }

    #[test]
    fn empty_polytope_rejected() {
        let err = DomainSpec::polytope(
            vec![v(&[(1.0, 0.0)]), v(&[(-1.0, 0.0)])],
            vec![-1.0, -1.0],
        );
        assert!(matches!(err, Err(Error::InvalidDomain { .. })));
    }

    #[test]
    fn product_class_rules() {
        let disc = DomainSpec::<f64>::unit_disc();
        let bidisc = DomainSpec::product(vec![disc.clone(), disc.clone()]).unwrap();
        assert_eq!(bidisc.class(), ConvexityClass::Convex);
        assert!(bidisc.is_bounded());

        let mixed = DomainSpec::product(vec![disc, DomainSpec::slit_plane()]).unwrap();
        assert_eq!(mixed.class(), ConvexityClass::WeaklyLinearlyConvex);
        assert!(!mixed.is_bounded());
    }

    #[test]
    fn class_widening_only() {
        let b = DomainSpec::ball(V::zeros(1), 1.0).unwrap();
        let widened = b.clone().with_class(ConvexityClass::CConvex).unwrap();
        assert_eq!(widened.class(), ConvexityClass::CConvex);
        assert!(widened
            .with_class(ConvexityClass::Convex)
            .is_err());
    }

    #[test]
    fn affine_image_membership() {
        let disc = DomainSpec::<f64>::unit_disc();
        // Anchor a = -1 with a + 2(z - a) sends the unit disc to |z - 1| < 2.
        let anchor_shift =
            ComplexAffineMap::new(v(&[(-1.0, 0.0)]), CMatrix::from_rows(&[v(&[(2.0, 0.0)])]))
                .unwrap();
        let image = DomainSpec::affine_image(anchor_shift, disc).unwrap();
        // Image is the disc |z - 1| < 2.
        assert!(image.contains(&v(&[(2.5, 0.0)])));
        assert!(!image.contains(&v(&[(-1.5, 0.0)])));
        let bx = image.bounding_box().unwrap();
        assert!((bx[0].0 + 1.0).abs() < 1e-12 && (bx[0].1 - 3.0).abs() < 1e-12);
        assert!((bx[1].0 + 2.0).abs() < 1e-12 && (bx[1].1 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn ellipsoid_value_matches_definition() {
        // m = (1, 2): |z1|^2 + |z2|^4
        let d = DomainSpec::complex_ellipsoid(vec![1.0, 2.0]).unwrap();
        assert!(d.contains(&v(&[(0.5, 0.0), (0.5, 0.5)])));
        assert!(!d.contains(&v(&[(0.9, 0.0), (0.0, 0.8)])));
        assert_eq!(d.class(), ConvexityClass::Convex);
    }

    #[test]
    fn interior_points_are_interior() {
        let shapes: Vec<DomainSpec<f64>> = vec![
            DomainSpec::ball(v(&[(0.3, 0.1)]), 0.7).unwrap(),
            DomainSpec::polytope(
                vec![
                    v(&[(1.0, 0.0)]),
                    v(&[(-1.0, 0.0)]),
                    v(&[(0.0, 1.0)]),
                    v(&[(0.0, -1.0)]),
                ],
                vec![1.0, 2.0, 3.0, 4.0],
            )
            .unwrap(),
            DomainSpec::slit_plane(),
            DomainSpec::right_half_plane(),
            DomainSpec::complex_ellipsoid(vec![1.0, 3.0]).unwrap(),
        ];
        for d in shapes {
            let q = d.interior_point().unwrap();
            assert!(d.contains(&q), "interior point escaped {:?}", d.shape());
        }
    }
}
