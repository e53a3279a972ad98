//! Distance axioms for the multiplicative metric on ℂ*: symmetry,
//! identity, triangle inequality over random triples, and the derivative
//! normalization at unit-scale base points.

use anyhow::{ensure, Result};
use minbasis::bounds::{cstar_derivative_residual, cstar_metric};
use minbasis::C64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::config::MetricConfig;
use crate::report::{ExperimentReport, SuiteBuilder, SuiteOutcome};
use crate::sampling::substream;

/// Log-uniform modulus in [1e-3, 1e3], uniform phase.
fn sample_cstar(rng: &mut ChaCha8Rng) -> C64 {
    let modulus = rng.gen_range(1e-3f64.ln()..1e3f64.ln()).exp();
    let phase = rng.gen_range(0.0..std::f64::consts::TAU);
    C64::from_polar(modulus, phase)
}

fn triple_witness(x: C64, y: C64, z: C64) -> String {
    json!({
        "x": [x.re, x.im],
        "y": [y.re, y.im],
        "z": [z.re, z.im]
    })
    .to_string()
}

pub fn run(cfg: &MetricConfig) -> Result<SuiteOutcome> {
    ensure!(cfg.triples > 0, "triple count must be positive");
    ensure!(
        cfg.derivative_step > 0.0,
        "derivative step must be positive"
    );
    let mut b = SuiteBuilder::new("metric-props", Some(cfg.seed));

    let mut axioms = ExperimentReport::new("distance axioms");
    let mut rng = substream(cfg.seed, 0);
    for i in 0..cfg.triples {
        let x = sample_cstar(&mut rng);
        let y = sample_cstar(&mut rng);
        let z = sample_cstar(&mut rng);
        let dxy = cstar_metric(x, y)?;
        let dxz = cstar_metric(x, z)?;
        let dzy = cstar_metric(z, y)?;
        axioms.cases += 1;
        b.check_lt(
            &mut axioms,
            i,
            "triangle inequality",
            || triple_witness(x, y, z),
            dxy,
            dxz + dzy,
            1e-12,
        );
        b.check_lt(
            &mut axioms,
            i,
            "symmetry",
            || triple_witness(x, y, z),
            (dxy - cstar_metric(y, x)?).abs(),
            1e-15,
            0.0,
        );
        b.check_lt(
            &mut axioms,
            i,
            "positivity for distinct points",
            || triple_witness(x, y, z),
            0.0,
            dxy,
            0.0,
        );
    }
    // The degenerate triple collapses every axiom to an exact zero.
    let a = C64::new(0.7, -1.3);
    axioms.cases += 1;
    b.check_lt(
        &mut axioms,
        cfg.triples,
        "identity of indiscernibles",
        || triple_witness(a, a, a),
        cstar_metric(a, a)?.abs(),
        0.0,
        f64::EPSILON,
    );
    b.push(axioms);

    // Finite-difference check of d(a, a + lambda)/|lambda| -> 1/|a|. Base
    // points stay at unit scale so the step resolves the limit.
    let mut deriv = ExperimentReport::new("derivative normalization");
    let mut rng = substream(cfg.seed, 1);
    let mut worst = 0.0f64;
    for i in 0..cfg.derivative_points {
        let modulus = rng.gen_range(0.5f64.ln()..2.0f64.ln()).exp();
        let phase = rng.gen_range(0.0..std::f64::consts::TAU);
        let a = C64::from_polar(modulus, phase);
        let residual = cstar_derivative_residual(a, cfg.derivative_step)?;
        worst = worst.max(residual);
        deriv.cases += 1;
        b.check_lt(
            &mut deriv,
            i,
            "derivative residual below 1e-4",
            || json!({ "a": [a.re, a.im] }).to_string(),
            residual,
            1e-4,
            0.0,
        );
    }
    deriv.metrics.insert("worst_residual".into(), worst);
    b.push(deriv);

    Ok(b.finish())
}
