//! Planar-projection diagnostic: after the triangular normalization, the
//! boundary distance of the j-th coordinate projection at q_j recovers
//! the scale tau_j. The projection's boundary distance is estimated from
//! above by support-function minimization over sampled directions.

use anyhow::{ensure, Context, Result};
use minbasis::basis::{compute_minimal_basis, rotate_to_standard, triangular_map};
use minbasis::domain::support_value;
use minbasis::{C64, CVector64, Domain64};
use serde_json::json;

use crate::config::{to_vector, ProjectionConfig};
use crate::report::{ExperimentReport, SuiteBuilder, SuiteOutcome};

/// Support function of the j-th coordinate projection of the normalized
/// domain, evaluated at the unit direction u: the normalization acts as
/// z -> q + L(z - q), so the support pulls back through the adjoint.
fn projection_support(
    image: &Domain64,
    adjoint: &minbasis::CMatrix64,
    q: &CVector64,
    j: usize,
    u: C64,
) -> Result<f64> {
    let eta = CVector64::standard(q.dim(), j).scale(u);
    let pulled = adjoint.mul_vec(&eta);
    let h = support_value(image, &pulled).context("support oracle")?;
    Ok(q.inner(&eta).re + h - q.inner(&pulled).re)
}

pub fn run(cfg: &ProjectionConfig) -> Result<SuiteOutcome> {
    ensure!(
        !cfg.direction_counts.is_empty(),
        "direction_counts must be nonempty"
    );
    let d = cfg.domain.build().context("building the domain")?;
    let q = to_vector(&cfg.base_point);
    let mb = compute_minimal_basis(&d, &q).context("computing the minimal basis")?;
    let (map, image) = rotate_to_standard(&mb, &d).context("rotating to standard position")?;
    let mb_std = mb.transport(&map).context("transporting the basis")?;
    let tri = triangular_map(&image, &mb_std).context("triangular normalization")?;
    let adjoint = tri.matrix().adjoint();
    let n = d.dim();

    let mut b = SuiteBuilder::new("projection", None);
    for &count in &cfg.direction_counts {
        ensure!(count >= 4, "need at least 4 directions, got {count}");
        let mut exp = ExperimentReport::new(format!("directions={count}"));
        for j in 0..n {
            let qj = q[j];
            let mut estimate = f64::INFINITY;
            for k in 0..count {
                let phase = std::f64::consts::TAU * (k as f64) / (count as f64);
                let u = C64::from_polar(1.0, phase);
                let h = projection_support(&image, &adjoint, &q, j, u)?;
                estimate = estimate.min(h - (qj * u.conj()).re);
            }
            let tau = mb_std.scales()[j];
            exp.cases += count;
            exp.metrics.insert(format!("estimate_{}", j + 1), estimate);
            exp.metrics
                .insert(format!("error_{}", j + 1), estimate - tau);
            // Sampled minimum over finitely many directions sits above the
            // true boundary distance, which is the scale.
            b.check_lt(
                &mut exp,
                j,
                "projection estimate stays above the scale",
                || json!({ "projection": j + 1, "q_j": [qj.re, qj.im] }).to_string(),
                tau - estimate,
                0.0,
                1e-9,
            );
        }
        b.push(exp);
    }

    Ok(b.finish())
}
