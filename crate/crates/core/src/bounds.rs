//! Closed-form distance estimates: the inner/outer polydisc coefficients,
//! the hull-gauge chain check, boundary-distance quotient and planar lower
//! bounds, the half-plane formula, and the multiplicative metric on ℂ*.

use num_complex::Complex;

use crate::domain::ConvexityClass;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tol;

/// Inverse hyperbolic tangent as ½ log((1+x)/(1−x)), saturating to ±∞ when
/// |x| reaches 1 − 1e-15.
pub fn artanh<R: Real>(x: R) -> R {
    let guard = R::one() - tol::artanh_guard::<R>();
    if x >= guard {
        R::infinity()
    } else if x <= -guard {
        R::neg_infinity()
    } else {
        R::of(0.5) * ((R::one() + x) / (R::one() - x)).ln()
    }
}

/// Inner polydisc coefficient tanh(r)/n, computed as
/// (e^{2r} − 1)/(n (e^{2r} + 1)) to stay exact for large r.
pub fn inner_coefficient<R: Real>(r: R, n: usize) -> R {
    let em = (R::of(2.0) * r).exp_m1();
    em / (R::from_usize(n).expect("dimension fits the scalar") * (em + R::of(2.0)))
}

/// Outer polydisc coefficient: e^{2r} − 1 for convex domains, e^{4r} − 1
/// for ℂ-convex ones. Weakly linearly convex domains admit no outer bound.
pub fn outer_coefficient<R: Real>(r: R, class: ConvexityClass) -> Result<R> {
    if !(r > R::zero()) {
        return Err(Error::invalid("radius must be positive"));
    }
    match class {
        ConvexityClass::Convex => Ok((R::of(2.0) * r).exp_m1()),
        ConvexityClass::CConvex => Ok((R::of(4.0) * r).exp_m1()),
        ConvexityClass::WeaklyLinearlyConvex => Err(Error::Unsupported {
            context: "no outer polydisc coefficient for weak linear convexity",
        }),
    }
}

/// The coefficient pair of the polydisc sandwich at a fixed radius and
/// dimension: scaling the basis scales by `inner_coeff` gives a polydisc
/// inside the distance ball of radius r, by `outer_coeff` one containing it.
#[derive(Clone, Copy, Debug)]
pub struct SandwichBox<R: Real> {
    radius: R,
    class: ConvexityClass,
    dimension: usize,
    inner_coeff: R,
    outer_coeff: R,
}

impl<R: Real> SandwichBox<R> {
    pub fn new(radius: R, class: ConvexityClass, dimension: usize) -> Result<Self> {
        if !(radius > R::zero()) || !radius.is_finite() {
            return Err(Error::invalid("radius must be positive and finite"));
        }
        if dimension == 0 {
            return Err(Error::invalid("dimension must be at least 1"));
        }
        let outer_coeff = outer_coefficient(radius, class)?;
        Ok(SandwichBox {
            radius,
            class,
            dimension,
            inner_coeff: inner_coefficient(radius, dimension),
            outer_coeff,
        })
    }

    pub fn radius(&self) -> R {
        self.radius
    }

    pub fn class(&self) -> ConvexityClass {
        self.class
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn inner_coeff(&self) -> R {
        self.inner_coeff
    }

    pub fn outer_coeff(&self) -> R {
        self.outer_coeff
    }
}

/// The gauge h(z) = Σ_j |z_j − q_j|/τ_j of the convex hull of coordinate
/// discs centered at q with radii τ.
#[derive(Clone, Debug)]
pub struct HullGauge<R: Real> {
    center: crate::geometry::CVector<R>,
    scales: Vec<R>,
}

impl<R: Real> HullGauge<R> {
    pub fn new(center: crate::geometry::CVector<R>, scales: Vec<R>) -> Result<Self> {
        if center.dim() != scales.len() {
            return Err(Error::DimensionMismatch {
                expected: center.dim(),
                got: scales.len(),
            });
        }
        for &s in &scales {
            if !(s > R::zero()) || !s.is_finite() {
                return Err(Error::invalid("gauge scales must be positive and finite"));
            }
        }
        Ok(HullGauge { center, scales })
    }

    pub fn center(&self) -> &crate::geometry::CVector<R> {
        &self.center
    }

    pub fn scales(&self) -> &[R] {
        &self.scales
    }

    pub fn dim(&self) -> usize {
        self.scales.len()
    }

    /// Σ_j |z_j − q_j|/τ_j. Panics on dimension mismatch.
    pub fn gauge(&self, z: &crate::geometry::CVector<R>) -> R {
        assert_eq!(z.dim(), self.dim(), "gauge dimension mismatch");
        z.iter()
            .zip(self.center.iter())
            .zip(self.scales.iter())
            .map(|((zj, qj), &s)| (zj - qj).norm() / s)
            .fold(R::zero(), |a, t| a + t)
    }

    /// max_j |z_j − q_j|/τ_j.
    pub fn max_ratio(&self, z: &crate::geometry::CVector<R>) -> R {
        assert_eq!(z.dim(), self.dim(), "gauge dimension mismatch");
        z.iter()
            .zip(self.center.iter())
            .zip(self.scales.iter())
            .map(|((zj, qj), &s)| (zj - qj).norm() / s)
            .fold(R::zero(), |a, t| a.max(t))
    }
}

/// The implication chain of the inner estimate, reported step by step so a
/// failure pinpoints the inequality that broke.
#[derive(Clone, Copy, Debug)]
pub struct InnerChainReport<R: Real> {
    /// max_j |z_j − q_j|/τ_j.
    pub max_ratio: R,
    /// Σ_j |z_j − q_j|/τ_j.
    pub gauge: R,
    /// tanh(r)/n.
    pub max_threshold: R,
    /// tanh(r).
    pub gauge_threshold: R,
    /// max_ratio < tanh(r)/n.
    pub max_ratio_ok: bool,
    /// gauge < tanh(r).
    pub gauge_ok: bool,
    /// artanh(gauge), an upper bound for the Lempert function at z, present
    /// when the gauge is below 1.
    pub lempert_bound: Option<R>,
}

/// Evaluates the inner-estimate chain at z: membership in the coefficient
/// polydisc forces the hull gauge below tanh(r), which caps the Lempert
/// function at artanh(gauge) < r.
pub fn inner_chain_check<R: Real>(
    h: &HullGauge<R>,
    z: &crate::geometry::CVector<R>,
    r: R,
) -> Result<InnerChainReport<R>> {
    if !(r > R::zero()) {
        return Err(Error::invalid("radius must be positive"));
    }
    if z.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: h.dim(),
            got: z.dim(),
        });
    }
    let max_ratio = h.max_ratio(z);
    let gauge = h.gauge(z);
    let n = h.dim();
    let max_threshold = inner_coefficient(r, n);
    let gauge_threshold = max_threshold * R::from_usize(n).expect("dimension fits the scalar");
    let lempert_bound = if gauge < R::one() {
        Some(artanh(gauge))
    } else {
        None
    };
    Ok(InnerChainReport {
        max_ratio,
        gauge,
        max_threshold,
        gauge_threshold,
        max_ratio_ok: max_ratio < max_threshold,
        gauge_ok: gauge < gauge_threshold,
        lempert_bound,
    })
}

/// Lower bound on the invariant distance from boundary distances:
/// max(0, κ log(dz/dw)) with κ = ½ for convex and ¼ for ℂ-convex domains.
pub fn quotient_lower_bound<R: Real>(dz: R, dw: R, class: ConvexityClass) -> Result<R> {
    if !(dz > R::zero()) || !(dw > R::zero()) {
        return Err(Error::invalid("boundary distances must be positive"));
    }
    let kappa: R = kappa_for(class)?;
    Ok((kappa * (dz / dw).ln()).max(R::zero()))
}

/// Planar lower bound κ log(1 + |z − w|/dw), κ as in the quotient form.
pub fn planar_lower_bound<R: Real>(
    z: Complex<R>,
    w: Complex<R>,
    dw: R,
    class: ConvexityClass,
) -> Result<R> {
    if !(dw > R::zero()) {
        return Err(Error::invalid("boundary distance must be positive"));
    }
    let kappa: R = kappa_for(class)?;
    Ok(kappa * ((z - w).norm() / dw).ln_1p())
}

fn kappa_for<R: Real>(class: ConvexityClass) -> Result<R> {
    match class {
        ConvexityClass::Convex => Ok(R::of(0.5)),
        ConvexityClass::CConvex => Ok(R::of(0.25)),
        ConvexityClass::WeaklyLinearlyConvex => Err(Error::Unsupported {
            context: "no quotient lower bound for weak linear convexity",
        }),
    }
}

/// Carathéodory distance of the right half-plane:
/// artanh |(z − w)/(z + conj(w))|.
pub fn halfplane_distance<R: Real>(z: Complex<R>, w: Complex<R>) -> Result<R> {
    if !(z.re > R::zero()) || !(w.re > R::zero()) {
        return Err(Error::OutsideDomain {
            context: "half-plane formula needs points with positive real part",
        });
    }
    let num = (z - w).norm();
    let den = (z + w.conj()).norm();
    Ok(artanh(num / den))
}

/// The multiplicative distance on ℂ*:
/// d(a, b) = log max(1 + |1 − a/b|, 1 + |1 − b/a|).
pub fn cstar_metric<R: Real>(a: Complex<R>, b: Complex<R>) -> Result<R> {
    if a.norm() == R::zero() || b.norm() == R::zero() {
        return Err(Error::invalid("the multiplicative metric needs nonzero points"));
    }
    let one = Complex::new(R::one(), R::zero());
    let t1 = (one - a / b).norm();
    let t2 = (one - b / a).norm();
    Ok((R::one() + t1.max(t2)).ln())
}

/// Finite-difference residual of the derivative property
/// lim d(a, a + λ)/|λ| = 1/|a|: the worst deviation over 8 equally spaced
/// directions at |λ| = step.
pub fn cstar_derivative_residual<R: Real>(a: Complex<R>, step: R) -> Result<R> {
    let na = a.norm();
    if na == R::zero() {
        return Err(Error::invalid("the multiplicative metric needs nonzero points"));
    }
    if !(step > R::zero()) || step > R::of(1e-4) * na {
        return Err(Error::invalid("step must lie in (0, 1e-4 |a|]"));
    }
    let target = na.recip();
    let mut worst = R::zero();
    for k in 0..8 {
        let theta = R::of(k as f64) * R::FRAC_PI_4();
        let lambda = Complex::new(theta.cos(), theta.sin()) * step;
        let quotient = cstar_metric(a, a + lambda)? / step;
        worst = worst.max((quotient - target).abs());
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::CVector;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;

    #[test]
    fn artanh_reference_values() {
        assert!((artanh(0.5f64) - 0.5493061443340548).abs() < 1e-15);
        assert!((artanh(1.0f64 / 3.0) - 0.34657359027997264).abs() < 1e-15);
        assert!(artanh(1.0f64 - 1e-16).is_infinite());
        assert!(artanh(0.0f64).abs() == 0.0);
        assert!(artanh(-0.5f64) < 0.0);
    }

    #[test]
    fn inner_coefficient_matches_tanh() {
        for r in [0.1f64, 0.5, 1.0, 2.0, 5.0] {
            for n in [1usize, 2, 3, 7] {
                let c = inner_coefficient(r, n);
                assert!(
                    (c * n as f64 - r.tanh()).abs() < 1e-12,
                    "r={r} n={n}: {c}"
                );
            }
        }
        assert!((inner_coefficient(1.0f64, 2) - 0.380_797_077_977_882_4).abs() < 1e-15);
    }

    #[test]
    fn outer_coefficient_reference_values() {
        let c = outer_coefficient(0.5f64, ConvexityClass::Convex).unwrap();
        assert!((c - 1.718281828459045).abs() < 1e-14);
        let c = outer_coefficient(0.5f64, ConvexityClass::CConvex).unwrap();
        assert!((c - 6.38905609893065).abs() < 1e-13);
        assert!(outer_coefficient(0.5f64, ConvexityClass::WeaklyLinearlyConvex).is_err());
        // Monotone decrease to 0 as r -> 0+.
        assert!(outer_coefficient(1e-9f64, ConvexityClass::Convex).unwrap() < 1e-8);
    }

    #[test]
    fn sandwich_box_invariants() {
        for r in [0.1, 0.5, 1.0, 2.0, 5.0] {
            for n in [1usize, 2, 5] {
                let b = SandwichBox::new(r, ConvexityClass::Convex, n).unwrap();
                assert!((b.inner_coeff() * n as f64 - r.tanh()).abs() < 1e-12);
                assert!(b.inner_coeff() > 0.0 && b.inner_coeff() < b.outer_coeff());
            }
        }
        assert!(SandwichBox::new(1.0, ConvexityClass::WeaklyLinearlyConvex, 2).is_err());
    }

    #[test]
    fn chain_report_reference_case() {
        // τ = (0.5, 0.8), z − q = (0.2, 0.2): gauge 0.65, artanh ≈ 0.7753.
        let h = HullGauge::new(CVector::zeros(2), vec![0.5, 0.8]).unwrap();
        let z = CVector::new(vec![C::new(0.2, 0.0), C::new(0.2, 0.0)]);
        assert!((h.gauge(&z) - 0.65).abs() < 1e-15);
        let report = inner_chain_check(&h, &z, 1.0).unwrap();
        assert!((report.lempert_bound.unwrap() - 0.7752987062055834).abs() < 1e-14);
        assert!((report.max_threshold - 0.380_797_077_977_882_4).abs() < 1e-15);
        assert!((report.gauge_threshold - 1.0f64.tanh()).abs() < 1e-12);
        // max ratio = 0.4 exceeds tanh(1)/2, so the polydisc test fails while
        // the gauge test passes (0.65 < tanh 1 ≈ 0.7616).
        assert!(!report.max_ratio_ok);
        assert!(report.gauge_ok);
    }

    #[test]
    fn chain_implication_on_random_tuples() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5000 {
            let n = rng.gen_range(1..=5);
            let scales: Vec<f64> = (0..n).map(|_| rng.gen_range(0.1..2.0)).collect();
            let h = HullGauge::new(CVector::zeros(n), scales).unwrap();
            let z = CVector::new(
                (0..n)
                    .map(|_| C::new(rng.gen_range(-0.5..0.5), rng.gen_range(-0.5..0.5)))
                    .collect(),
            );
            let r = rng.gen_range(0.05..3.0);
            let report = inner_chain_check(&h, &z, r).unwrap();
            if report.max_ratio_ok {
                assert!(report.gauge_ok, "max ok must force gauge ok: {report:?}");
                assert!(report.lempert_bound.unwrap() < r + 1e-12);
            }
        }
    }

    #[test]
    fn quotient_bound_reference_values() {
        let b = quotient_lower_bound(1.0f64, 0.1, ConvexityClass::Convex).unwrap();
        assert!((b - 1.1512925464970228).abs() < 1e-14);
        let b = quotient_lower_bound(1.0f64, 0.1, ConvexityClass::CConvex).unwrap();
        assert!((b - 0.5756462732485114).abs() < 1e-14);
        // Clamped when the quotient is below 1.
        assert_eq!(
            quotient_lower_bound(0.1, 1.0, ConvexityClass::Convex).unwrap(),
            0.0
        );
        assert_eq!(
            quotient_lower_bound(1.0, 1.0, ConvexityClass::Convex).unwrap(),
            0.0
        );
        assert!(quotient_lower_bound(-1.0, 1.0, ConvexityClass::Convex).is_err());
    }

    #[test]
    fn planar_bound_reference_values() {
        // Half-plane z=3, w=1: ½ log 3, which the exact formula attains.
        let b = planar_lower_bound(
            C::new(3.0, 0.0),
            C::new(1.0, 0.0),
            1.0,
            ConvexityClass::Convex,
        )
        .unwrap();
        assert!((b - 0.5493061443340548).abs() < 1e-15);
        let exact = halfplane_distance(C::new(3.0, 0.0), C::new(1.0, 0.0)).unwrap();
        assert!((b - exact).abs() < 1e-15);

        // Disc z=0.9, w=0: ½ log 1.9 ≤ artanh 0.9.
        let b = planar_lower_bound(
            C::new(0.9, 0.0),
            C::new(0.0, 0.0),
            1.0,
            ConvexityClass::Convex,
        )
        .unwrap();
        assert!((b - 0.5 * 1.9f64.ln()).abs() < 1e-15);
        assert!(b <= artanh(0.9));

        let zero = planar_lower_bound(
            C::new(0.3, 0.2),
            C::new(0.3, 0.2),
            0.5,
            ConvexityClass::CConvex,
        )
        .unwrap();
        assert_eq!(zero, 0.0);
    }

    #[test]
    fn halfplane_reference_values() {
        let d = halfplane_distance(C::new(1.0, 0.0), C::new(2.0, 0.0)).unwrap();
        assert!((d - 0.34657359027997264).abs() < 1e-15);
        assert_eq!(
            halfplane_distance(C::new(1.0, 0.0), C::new(1.0, 0.0)).unwrap(),
            0.0
        );
        assert!(halfplane_distance(C::new(-1.0, 0.0), C::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn halfplane_moebius_invariances() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..500 {
            let z = C::new(rng.gen_range(0.01..10.0), rng.gen_range(-10.0..10.0));
            let w = C::new(rng.gen_range(0.01..10.0), rng.gen_range(-10.0..10.0));
            let base = halfplane_distance(z, w).unwrap();
            let shift = C::new(0.0, rng.gen_range(-5.0..5.0));
            let shifted = halfplane_distance(z + shift, w + shift).unwrap();
            assert!((base - shifted).abs() < 1e-12);
            let t = rng.gen_range(0.1..10.0);
            let dilated = halfplane_distance(z * t, w * t).unwrap();
            assert!((base - dilated).abs() < 1e-12);
        }
    }

    #[test]
    // The expected values stay frozen decimals, including the one that
    // happens to be ln 2.
    #[allow(clippy::approx_constant)]
    fn cstar_metric_reference_values() {
        assert_eq!(cstar_metric(C::new(1.0, 0.0), C::new(1.0, 0.0)).unwrap(), 0.0);
        let d = cstar_metric(C::new(1.0, 0.0), C::new(2.0, 0.0)).unwrap();
        assert!((d - 0.6931471805599453).abs() < 1e-15);
        let d = cstar_metric(C::new(1.0, 0.0), C::new(-1.0, 0.0)).unwrap();
        assert!((d - 1.0986122886681098).abs() < 1e-15);
        assert!(cstar_metric(C::new(0.0, 0.0), C::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn cstar_metric_symmetry_and_separation() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..1000 {
            let a = C::from_polar(
                10f64.powf(rng.gen_range(-3.0..3.0)),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let b = C::from_polar(
                10f64.powf(rng.gen_range(-3.0..3.0)),
                rng.gen_range(0.0..std::f64::consts::TAU),
            );
            let ab = cstar_metric(a, b).unwrap();
            let ba = cstar_metric(b, a).unwrap();
            assert_eq!(ab, ba, "symmetry is exact by construction");
            if a != b {
                assert!(ab > 0.0);
            }
        }
    }

    #[test]
    fn cstar_derivative_residuals() {
        let r = cstar_derivative_residual(C::new(2.0, 0.0), 1e-6).unwrap();
        assert!(r < 1e-4, "{r}");
        let r = cstar_derivative_residual(C::new(0.0, 1.0), 1e-6).unwrap();
        assert!(r < 1e-4, "{r}");
        // First-order convergence: shrinking the step shrinks the residual.
        let big = cstar_derivative_residual(C::new(2.0, 0.0), 1e-4).unwrap();
        let small = cstar_derivative_residual(C::new(2.0, 0.0), 1e-6).unwrap();
        assert!(small < big);
        assert!(cstar_derivative_residual(C::new(2.0, 0.0), 1.0).is_err());
    }
}
