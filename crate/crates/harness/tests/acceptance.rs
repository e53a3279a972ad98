//! End-to-end verification of the library's inequalities against exact
//! oracles, one test per property. Direct computations are used where a
//! closed form exists; the randomized sweeps reuse the suite entry points
//! with their default configurations.

use std::time::Instant;

use minbasis::basis::compute_minimal_basis;
use minbasis::bounds::{halfplane_distance, planar_lower_bound, quotient_lower_bound};
use minbasis::domain::{boundary_distance, ConvexityClass};
use minbasis::oracles::{
    ball_distance, convex_bracket, poincare_disc, product_distance, slit_plane_distance,
};
use minbasis::{C64, CVector64, Domain64, SandwichBox64};
use minbasis_harness::config::{
    DomainConfig, MetricConfig, MinimalBasisConfig, ProjectionConfig, SandwichConfig,
};
use minbasis_harness::report::SuiteOutcome;
use minbasis_harness::sampling::{substream, uniform_disc};
use minbasis_harness::suites::{metric, minimal_basis, projection, sandwich};

fn v2(a: C64, b: C64) -> CVector64 {
    CVector64::new(vec![a, b])
}

fn unit_ball2() -> Domain64 {
    Domain64::ball(CVector64::zeros(2), 1.0).unwrap()
}

fn bidisc() -> Domain64 {
    Domain64::polydisc(CVector64::zeros(2), vec![1.0, 1.0]).unwrap()
}

fn experiment<'a>(outcome: &'a SuiteOutcome, label: &str) -> &'a minbasis_harness::report::ExperimentReport {
    outcome
        .report
        .experiments
        .iter()
        .find(|e| e.label == label)
        .unwrap_or_else(|| panic!("missing experiment {label}"))
}

#[test]
fn disc_ball_coefficients_are_tight() {
    let start = Instant::now();
    let mut rng = substream(42, 100);
    for &r in &[0.25f64, 0.5, 1.0, 2.0] {
        let sandwich = SandwichBox64::new(r, ConvexityClass::Convex, 1).unwrap();
        let inner = sandwich.inner_coeff();
        let outer = sandwich.outer_coeff();
        assert!((inner - r.tanh()).abs() < 1e-12);
        for _ in 0..10_000 {
            // Points of the inner disc lie inside the metric ball, and the
            // metric ball lies inside the outer disc; at n = 1 and base 0
            // both memberships are explicit in |z|.
            let z = uniform_disc(&mut rng) * inner;
            let dist = poincare_disc(z, C64::new(0.0, 0.0)).unwrap();
            assert!(dist < r + 1e-12, "inner point escaped: |z|={} r={r}", z.norm());
            assert!(z.norm() < outer + 1e-12, "metric ball escaped the outer disc");
        }
    }
    assert!(start.elapsed().as_secs_f64() < 1.0, "time budget exceeded");
    println!("pass: disc sandwich coefficients tight for r in {{0.25, 0.5, 1, 2}}");
}

#[test]
fn sandwich_zero_violations_on_ball_and_bidisc() {
    let start = Instant::now();
    let ball_cfg = SandwichConfig {
        domain: DomainConfig::Ball {
            center: vec![[0.0, 0.0], [0.0, 0.0]],
            radius: 1.0,
        },
        base_point: vec![[0.5, 0.0], [0.0, 0.0]],
        radii: vec![0.25, 0.5, 1.0, 2.0],
        samples: 10_000,
        seed: 42,
    };
    let bidisc_cfg = SandwichConfig {
        domain: DomainConfig::Polydisc {
            center: vec![[0.0, 0.0], [0.0, 0.0]],
            radii: vec![1.0, 1.0],
        },
        base_point: vec![[0.5, 0.0], [0.2, 0.0]],
        radii: vec![0.25, 0.5, 1.0, 2.0],
        samples: 10_000,
        seed: 42,
    };
    for cfg in [ball_cfg, bidisc_cfg] {
        let outcome = sandwich::run(&cfg).unwrap();
        assert!(outcome.report.passed, "sandwich violations: {:?}", outcome.report.violations);
        assert_eq!(outcome.report.violation_count, 0);
    }
    assert!(start.elapsed().as_secs_f64() < 10.0, "time budget exceeded");
    println!("pass: sandwich sweeps on the ball and the bidisc report zero violations");
}

#[test]
fn planar_lower_bounds_never_exceed_exact_distances() {
    let mut rng = substream(42, 101);
    let slit = Domain64::slit_plane();

    // Right half-plane: log-uniform real parts, matched imaginary spread.
    for _ in 0..100_000 {
        let draw = |rng: &mut _| {
            let re = rand::Rng::gen_range(rng, 1e-2f64.ln()..1e2f64.ln()).exp();
            let im = rand::Rng::gen_range(rng, -3.0..3.0) * re;
            C64::new(re, im)
        };
        let z = draw(&mut rng);
        let w = draw(&mut rng);
        let exact = halfplane_distance(z, w).unwrap();
        let lower = planar_lower_bound(z, w, w.re, ConvexityClass::Convex).unwrap();
        assert!(lower <= exact + 1e-12, "half-plane bound crossed at z={z} w={w}");
    }

    for _ in 0..100_000 {
        let z = uniform_disc(&mut rng);
        let w = uniform_disc(&mut rng);
        let exact = poincare_disc(z, w).unwrap();
        let lower = planar_lower_bound(z, w, 1.0 - w.norm(), ConvexityClass::Convex).unwrap();
        assert!(lower <= exact + 1e-12, "disc bound crossed at z={z} w={w}");
    }

    for _ in 0..100_000 {
        let draw = |rng: &mut _| {
            let modulus = rand::Rng::gen_range(rng, 1e-1f64.ln()..1e1f64.ln()).exp();
            let phase = rand::Rng::gen_range(rng, 1e-3..std::f64::consts::TAU - 1e-3);
            C64::from_polar(modulus, phase)
        };
        let z = draw(&mut rng);
        let w = draw(&mut rng);
        let exact = slit_plane_distance(z, w).unwrap();
        let dw = boundary_distance(&slit, &CVector64::new(vec![w])).unwrap();
        let lower = planar_lower_bound(z, w, dw, ConvexityClass::CConvex).unwrap();
        assert!(lower <= exact + 1e-12, "slit-plane bound crossed at z={z} w={w}");
    }

    // Collinear half-plane pair where the bound is attained.
    let exact = halfplane_distance(C64::new(3.0, 0.0), C64::new(1.0, 0.0)).unwrap();
    let lower =
        planar_lower_bound(C64::new(3.0, 0.0), C64::new(1.0, 0.0), 1.0, ConvexityClass::Convex)
            .unwrap();
    assert!((exact - lower).abs() < 1e-12, "equality pair off: {exact} vs {lower}");
    println!("pass: planar lower bounds below exact distances on 3 x 100000 pairs, equality attained");
}

#[test]
fn slit_plane_saturates_quarter_log() {
    for &t in &[2.0f64, 10.0, 100.0] {
        let exact = slit_plane_distance(C64::new(-t, 0.0), C64::new(-1.0, 0.0)).unwrap();
        assert!(
            (exact - 0.25 * t.ln()).abs() < 1e-12,
            "quarter-log saturation failed at t={t}: {exact}"
        );
    }
    println!("pass: slit-plane distance equals log(t)/4 at (-t, -1) for t in {{2, 10, 100}}");
}

#[test]
fn disc_ratio_increases_toward_half_log() {
    let mut previous = f64::NEG_INFINITY;
    let mut last = 0.0;
    for &eps in &[1e-2f64, 1e-3, 1e-4, 1e-5, 1e-6] {
        let lower = quotient_lower_bound(1.0, eps, ConvexityClass::Convex).unwrap();
        let exact = poincare_disc(C64::new(1.0 - eps, 0.0), C64::new(0.0, 0.0)).unwrap();
        let ratio = lower / exact;
        assert!(ratio < 1.0, "lower bound crossed the distance at eps={eps}");
        assert!(ratio > previous, "ratio not strictly increasing at eps={eps}");
        previous = ratio;
        last = ratio;
    }
    assert!(last >= 0.95, "final ratio too small: {last}");
    assert!((last - 0.9522).abs() < 0.005, "final ratio off its frozen value: {last}");
    println!("pass: half-log ratio strictly increasing, {last:.4} at eps=1e-6");
}

#[test]
fn multiplicative_metric_axioms_and_derivative() {
    let start = Instant::now();
    let outcome = metric::run(&MetricConfig::default()).unwrap();
    assert!(outcome.report.passed, "metric violations: {:?}", outcome.report.violations);
    assert_eq!(outcome.report.violation_count, 0);
    let worst = experiment(&outcome, "derivative normalization").metrics["worst_residual"];
    assert!(worst < 1e-4, "derivative residual too large: {worst}");
    assert!(start.elapsed().as_secs_f64() < 5.0, "time budget exceeded");
    println!("pass: one million triangle triples clean, derivative residual {worst:.3e}");
}

#[test]
fn random_domain_basis_invariants() {
    let start = Instant::now();
    let outcome = minimal_basis::run(&MinimalBasisConfig::default()).unwrap();
    assert!(outcome.report.passed, "basis violations: {:?}", outcome.report.violations);
    assert_eq!(outcome.report.violation_count, 0);
    for label in ["random polytopes", "random ellipsoids"] {
        assert_eq!(experiment(&outcome, label).cases, 100);
    }
    assert!(start.elapsed().as_secs_f64() < 60.0, "time budget exceeded");
    println!("pass: 100 random polytopes and 100 random ellipsoids satisfy all basis invariants");
}

#[test]
fn projection_diagnostic_recovers_slice_distances() {
    let ball_cfg = ProjectionConfig {
        domain: DomainConfig::Ball {
            center: vec![[0.0, 0.0], [0.0, 0.0]],
            radius: 1.0,
        },
        base_point: vec![[0.5, 0.0], [0.0, 0.0]],
        direction_counts: vec![128, 512],
    };
    let outcome = projection::run(&ball_cfg).unwrap();
    assert!(outcome.report.passed);
    let target = 0.75f64.sqrt();
    let coarse = experiment(&outcome, "directions=128").metrics["estimate_2"];
    let fine = experiment(&outcome, "directions=512").metrics["estimate_2"];
    assert!((coarse - target).abs() < 4e-3, "128-direction estimate off: {coarse}");
    assert!((fine - target).abs() < 1e-3, "512-direction estimate off: {fine}");
    assert!(
        (fine - target).abs() <= (coarse - target).abs(),
        "refinement did not shrink the error"
    );

    let bidisc_cfg = ProjectionConfig {
        domain: DomainConfig::Polydisc {
            center: vec![[0.0, 0.0], [0.0, 0.0]],
            radii: vec![1.0, 1.0],
        },
        base_point: vec![[0.5, 0.0], [0.2, 0.0]],
        direction_counts: vec![128, 512],
    };
    let outcome = projection::run(&bidisc_cfg).unwrap();
    assert!(outcome.report.passed);
    for label in ["directions=128", "directions=512"] {
        let err = experiment(&outcome, label).metrics["error_2"];
        assert_eq!(err, 0.0, "bidisc projection should be exact, error {err}");
    }
    println!("pass: ball projection estimate converges to sqrt(3)/2, bidisc exact");
}

#[test]
fn second_scale_decays_like_sqrt() {
    let ball = unit_ball2();
    for &t in &[1e-1f64, 1e-2, 1e-3, 1e-4] {
        let q = v2(C64::new(1.0 - t, 0.0), C64::new(0.0, 0.0));
        let mb = compute_minimal_basis(&ball, &q).unwrap();
        let expected = (2.0 * t - t * t).sqrt();
        assert!(
            (mb.scales()[1] - expected).abs() < 1e-6,
            "ball second scale off at t={t}: {} vs {expected}",
            mb.scales()[1]
        );
    }
    let q = v2(C64::new(1.0 - 5e-5, 0.0), C64::new(0.0, 0.0));
    let mb = compute_minimal_basis(&ball, &q).unwrap();
    assert!(mb.scales()[1] < 1e-2, "ball second scale did not decay: {}", mb.scales()[1]);

    // Product boundary carrying an affine disc through the target: the
    // second scale stays pinned at the free factor's radius.
    let d = bidisc();
    for &t in &[1e-1f64, 1e-2, 1e-3, 1e-4, 5e-5] {
        let q = v2(C64::new(1.0 - t, 0.0), C64::new(0.2, 0.0));
        let mb = compute_minimal_basis(&d, &q).unwrap();
        assert!(
            (mb.scales()[1] - 0.8).abs() < 1e-9,
            "bidisc second scale moved at t={t}: {}",
            mb.scales()[1]
        );
    }
    println!("pass: ball scale decays like sqrt(2t - t^2), bidisc scale pinned at 0.8");
}

#[test]
fn bracket_straddles_closed_forms() {
    let mut rng = substream(42, 102);
    let disc = Domain64::unit_disc();
    let ball = unit_ball2();
    let poly = bidisc();
    let origin2 = CVector64::zeros(2);

    for _ in 0..10_000 {
        let z = uniform_disc(&mut rng);
        let w = uniform_disc(&mut rng);
        let exact = poincare_disc(z, w).unwrap();
        let zv = CVector64::new(vec![z]);
        let wv = CVector64::new(vec![w]);
        let bracket = convex_bracket(&disc, &zv, &wv, 64).unwrap();
        assert!(exact - bracket.lower() >= -1e-9, "disc lower side crossed at {z} {w}");
        assert!(bracket.upper() - exact >= -1e-9, "disc upper side crossed at {z} {w}");
    }

    let ball_pair = |rng: &mut _| loop {
        let z = v2(uniform_disc(rng), uniform_disc(rng));
        if z.norm() < 1.0 {
            return z;
        }
    };
    for _ in 0..10_000 {
        let z = ball_pair(&mut rng);
        let w = ball_pair(&mut rng);
        let exact = ball_distance(&origin2, 1.0, &z, &w).unwrap();
        let bracket = convex_bracket(&ball, &z, &w, 64).unwrap();
        assert!(exact - bracket.lower() >= -1e-9, "ball lower side crossed");
        assert!(bracket.upper() - exact >= -1e-9, "ball upper side crossed");
    }

    for _ in 0..10_000 {
        let z = v2(uniform_disc(&mut rng), uniform_disc(&mut rng));
        let w = v2(uniform_disc(&mut rng), uniform_disc(&mut rng));
        let exact = product_distance(&[
            poincare_disc(z[0], w[0]).unwrap(),
            poincare_disc(z[1], w[1]).unwrap(),
        ])
        .unwrap();
        let bracket = convex_bracket(&poly, &z, &w, 64).unwrap();
        assert!(exact - bracket.lower() >= -1e-9, "bidisc lower side crossed");
        assert!(bracket.upper() - exact >= -1e-9, "bidisc upper side crossed");
    }
    println!("pass: bracket straddles closed forms on disc, ball, bidisc, 10000 pairs each");
}
