//! Sharpness of the boundary-distance lower bounds: the disc drives the
//! convex constant toward saturation, the slit plane saturates the
//! ℂ-convex constant exactly, and random planar pairs confirm the bound
//! side of the inequality on all three model domains.

use anyhow::{ensure, Result};
use minbasis::bounds::{halfplane_distance, planar_lower_bound, quotient_lower_bound};
use minbasis::domain::{boundary_distance, ConvexityClass};
use minbasis::oracles::{poincare_disc, slit_plane_distance};
use minbasis::{C64, CVector64, Domain64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::config::SharpnessConfig;
use crate::report::{ExperimentReport, SuiteBuilder, SuiteOutcome};
use crate::sampling::substream;

fn pair_witness(z: C64, w: C64) -> String {
    json!({ "z": [z.re, z.im], "w": [w.re, w.im] }).to_string()
}

/// Ratio of the quotient lower bound to the exact disc distance for the
/// pair (1 - eps, 0); tends to 1 from below as eps shrinks.
fn disc_ratio(eps: f64) -> Result<f64> {
    let z = C64::new(1.0 - eps, 0.0);
    let w = C64::new(0.0, 0.0);
    let bound = quotient_lower_bound(1.0, eps, ConvexityClass::Convex)?;
    let exact = poincare_disc(z, w)?;
    Ok(bound / exact)
}

fn slit_boundary_distance(w: C64) -> f64 {
    if w.re > 0.0 {
        w.im.abs()
    } else {
        w.norm()
    }
}

/// Log-uniform modulus in [lo, hi], uniform phase, avoiding the slit ray.
fn sample_slit_point(rng: &mut ChaCha8Rng) -> C64 {
    let modulus = (rng.gen_range(1e-1f64.ln()..1e1f64.ln())).exp();
    let phase = rng.gen_range(1e-3..std::f64::consts::TAU - 1e-3);
    C64::from_polar(modulus, phase)
}

pub fn run(cfg: &SharpnessConfig) -> Result<SuiteOutcome> {
    ensure!(!cfg.epsilons.is_empty(), "epsilons must be nonempty");
    ensure!(cfg.pair_samples > 0, "pair_samples must be positive");
    let mut b = SuiteBuilder::new("sharpness", Some(cfg.seed));

    // Disc: ratio of the convex bound to the exact distance along
    // z = 1 - eps, monotone increasing toward 1.
    let mut disc = ExperimentReport::new("disc ratio");
    let mut ratios = Vec::with_capacity(cfg.epsilons.len());
    for (i, &eps) in cfg.epsilons.iter().enumerate() {
        ensure!(
            eps > 0.0 && eps < 1.0,
            "disc epsilon must lie in (0, 1), got {eps}"
        );
        let ratio = disc_ratio(eps)?;
        disc.cases += 1;
        b.check_lt(
            &mut disc,
            i,
            "bound ratio below 1",
            || format!("eps={eps}"),
            ratio,
            1.0,
            0.0,
        );
        if let Some(&prev) = ratios.last() {
            b.check_lt(
                &mut disc,
                i,
                "bound ratio strictly increasing in 1/eps",
                || format!("eps={eps}"),
                prev,
                ratio,
                0.0,
            );
        }
        ratios.push(ratio);
    }
    if let Some(&last) = ratios.last() {
        disc.metrics.insert("final_ratio".into(), last);
    }
    disc.series.insert("epsilons".into(), cfg.epsilons.clone());
    disc.series.insert("ratios".into(), ratios);
    b.push(disc);

    // Slit plane: the pair (-t, -1) saturates the quarter-log bound.
    let mut slit = ExperimentReport::new("slit saturation");
    for (i, &t) in cfg.slit_ts.iter().enumerate() {
        ensure!(t > 1.0, "slit parameter must exceed 1, got {t}");
        let z = C64::new(-t, 0.0);
        let w = C64::new(-1.0, 0.0);
        let exact = slit_plane_distance(z, w)?;
        let target = 0.25 * t.ln();
        slit.cases += 1;
        slit.metrics
            .insert(format!("gap_t_{t}"), (exact - target).abs());
        b.check_lt(
            &mut slit,
            i,
            "exact distance equals quarter log t",
            || pair_witness(z, w),
            (exact - target).abs(),
            1e-12,
            0.0,
        );
    }
    b.push(slit);

    // Random pairs: the planar lower bound stays below the exact distance
    // on the half-plane, the disc, and the slit plane.
    let halfplane = Domain64::right_half_plane();
    let disc_domain = Domain64::unit_disc();
    let slit_domain = Domain64::slit_plane();

    let mut pairs = ExperimentReport::new("half-plane pairs");
    let mut rng = substream(cfg.seed, 0);
    for i in 0..cfg.pair_samples {
        let z = C64::new(
            rng.gen_range(1e-2f64.ln()..1e2f64.ln()).exp(),
            rng.gen_range(-10.0..10.0),
        );
        let w = C64::new(
            rng.gen_range(1e-2f64.ln()..1e2f64.ln()).exp(),
            rng.gen_range(-10.0..10.0),
        );
        let dw = boundary_distance(&halfplane, &CVector64::new(vec![w]))?;
        let bound = planar_lower_bound(z, w, dw, ConvexityClass::Convex)?;
        let exact = halfplane_distance(z, w)?;
        pairs.cases += 1;
        b.check_lt(
            &mut pairs,
            i,
            "planar lower bound below exact distance",
            || pair_witness(z, w),
            bound,
            exact,
            1e-12,
        );
    }
    // Collinear real configuration where the bound is attained.
    let (z0, w0) = (C64::new(3.0, 0.0), C64::new(1.0, 0.0));
    let bound0 = planar_lower_bound(z0, w0, 1.0, ConvexityClass::Convex)?;
    let exact0 = halfplane_distance(z0, w0)?;
    pairs.cases += 1;
    pairs
        .metrics
        .insert("collinear_equality_gap".into(), (bound0 - exact0).abs());
    b.check_lt(
        &mut pairs,
        cfg.pair_samples,
        "collinear pair attains the bound",
        || pair_witness(z0, w0),
        (bound0 - exact0).abs(),
        1e-12,
        0.0,
    );
    b.push(pairs);

    let mut dpairs = ExperimentReport::new("disc pairs");
    let mut rng = substream(cfg.seed, 1);
    for i in 0..cfg.pair_samples {
        let z = C64::from_polar(rng.gen::<f64>().sqrt() * 0.999, rng.gen_range(0.0..std::f64::consts::TAU));
        let w = C64::from_polar(rng.gen::<f64>().sqrt() * 0.999, rng.gen_range(0.0..std::f64::consts::TAU));
        let dw = boundary_distance(&disc_domain, &CVector64::new(vec![w]))?;
        let bound = planar_lower_bound(z, w, dw, ConvexityClass::Convex)?;
        let exact = poincare_disc(z, w)?;
        dpairs.cases += 1;
        b.check_lt(
            &mut dpairs,
            i,
            "planar lower bound below exact distance",
            || pair_witness(z, w),
            bound,
            exact,
            1e-12,
        );
    }
    b.push(dpairs);

    let mut spairs = ExperimentReport::new("slit-plane pairs");
    let mut rng = substream(cfg.seed, 2);
    for i in 0..cfg.pair_samples {
        let z = sample_slit_point(&mut rng);
        let w = sample_slit_point(&mut rng);
        let dw = boundary_distance(&slit_domain, &CVector64::new(vec![w]))?;
        debug_assert!((dw - slit_boundary_distance(w)).abs() <= 1e-12 * (1.0 + dw));
        let bound = planar_lower_bound(z, w, dw, ConvexityClass::CConvex)?;
        let exact = slit_plane_distance(z, w)?;
        spairs.cases += 1;
        b.check_lt(
            &mut spairs,
            i,
            "planar lower bound below exact distance",
            || pair_witness(z, w),
            bound,
            exact,
            1e-12,
        );
    }
    b.push(spairs);

    Ok(b.finish())
}
