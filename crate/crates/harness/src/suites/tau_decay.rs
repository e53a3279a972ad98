//! Decay of the last scale along a sequence approaching a boundary point.
//! Diagnostic: whether the boundary carries an affine disc through the
//! target decides decay versus a positive limit, and that hypothesis is
//! not machine-checkable; the suite reports the trend and flags it.

use anyhow::{bail, ensure, Context, Result};
use minbasis::basis::compute_minimal_basis;
use minbasis::domain::boundary_distance;

use crate::config::{from_vector, to_vector, TauDecayConfig};
use crate::report::{ExperimentReport, SuiteBuilder, SuiteOutcome};

pub fn run(cfg: &TauDecayConfig) -> Result<SuiteOutcome> {
    ensure!(!cfg.t_values.is_empty(), "t_values must be nonempty");
    let d = cfg.domain.build().context("building the domain")?;
    let a = to_vector(&cfg.boundary_point);
    let u = to_vector(&cfg.inward);
    ensure!(
        a.dim() == d.dim() && u.dim() == d.dim(),
        "boundary point and inward direction must match the domain dimension"
    );

    let mut b = SuiteBuilder::new("tau-decay", None);
    let mut exp = ExperimentReport::new("scales along the sequence");
    let n = d.dim();
    let mut per_scale: Vec<Vec<f64>> = vec![Vec::new(); n];
    let mut last_tau_n = f64::NAN;

    for (i, &t) in cfg.t_values.iter().enumerate() {
        ensure!(t > 0.0, "sequence parameter must be positive, got {t}");
        let q = a.add(&u.scale_re(t));
        if !d.contains(&q) {
            bail!("sequence exits the domain at t = {t}");
        }
        let mb = compute_minimal_basis(&d, &q).context("computing the minimal basis")?;
        for (j, &tau) in mb.scales().iter().enumerate() {
            per_scale[j].push(tau);
        }
        last_tau_n = mb.scales()[n - 1];
        exp.cases += 1;

        // The first scale is the boundary distance; a cheap consistency
        // check that keeps the diagnostic falsifiable.
        let bd = boundary_distance(&d, &q)?;
        b.check_lt(
            &mut exp,
            i,
            "first scale equals the boundary distance",
            || serde_json::to_string(&from_vector(&q)).expect("vector serializes"),
            (mb.scales()[0] - bd).abs(),
            1e-7 * (1.0 + bd),
            0.0,
        );
    }

    exp.series.insert("t".into(), cfg.t_values.clone());
    for (j, series) in per_scale.into_iter().enumerate() {
        exp.series.insert(format!("tau_{}", j + 1), series);
    }
    exp.metrics.insert("final_last_scale".into(), last_tau_n);
    exp.notes.push(if last_tau_n < cfg.decay_tolerance {
        format!("decay: last scale fell below {}", cfg.decay_tolerance)
    } else {
        format!(
            "no-decay: last scale stayed at {last_tau_n:.6} (boundary may carry an affine disc through the target)"
        )
    });
    b.push(exp);

    Ok(b.finish())
}
