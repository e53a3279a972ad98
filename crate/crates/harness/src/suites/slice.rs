//! Plot-ready grid export: classifies the nodes of a 2-real-dimensional
//! slice through the base point against the three nested regions (inner
//! polydisc, invariant ball, outer polydisc) and counts nesting breaks.

use anyhow::{bail, ensure, Context, Result};
use minbasis::basis::compute_minimal_basis;
use minbasis::bounds::SandwichBox;
use minbasis::oracles::convex_bracket;
use minbasis::{CVector64, Domain64, C64};

use crate::config::{from_vector, to_vector, SliceConfig};
use crate::oracle::{exact_distance, has_exact_oracle};
use crate::report::{ExperimentReport, SuiteBuilder, SuiteOutcome};

/// Region codes, innermost wins: 0 outside everything, 1 inside the outer
/// polydisc only, 2 inside the invariant ball, 3 inside the inner polydisc.
const OUTSIDE: u8 = 0;
const OUTER: u8 = 1;
const BALL: u8 = 2;
const INNER: u8 = 3;

/// Ball membership: `Some(inside)` when certified either way, `None` when
/// the bracket could not separate the point from the radius.
fn ball_membership(
    d: &Domain64,
    exact: bool,
    q: &CVector64,
    z: &CVector64,
    r: f64,
    n_support: usize,
) -> Option<bool> {
    if !d.contains(z) {
        return Some(false);
    }
    if exact {
        return exact_distance(d, q, z).map(|dist| dist < r);
    }
    let bracket = convex_bracket(d, q, z, n_support).ok()?;
    if bracket.upper() < r {
        Some(true)
    } else if bracket.lower() >= r {
        Some(false)
    } else {
        None
    }
}

pub fn run(cfg: &SliceConfig) -> Result<SuiteOutcome> {
    ensure!(cfg.grid >= 2, "grid must have at least 2 nodes per side");
    ensure!(cfg.radius > 0.0, "radius must be positive");
    let d = cfg.domain.build().context("building the domain")?;
    let q = to_vector(&cfg.base_point);
    let dir = to_vector(&cfg.direction);
    ensure!(
        dir.dim() == d.dim(),
        "slice direction must match the domain dimension"
    );
    let Some(v) = dir.normalized(1e-12) else {
        bail!("slice direction must be nonzero");
    };

    let mb = compute_minimal_basis(&d, &q).context("computing the minimal basis")?;
    let sandwich = SandwichBox::new(cfg.radius, d.class(), d.dim())
        .context("sandwich coefficients")?;
    let inner_radii: Vec<f64> = mb
        .scales()
        .iter()
        .map(|t| t * sandwich.inner_coeff())
        .collect();
    let outer_radii: Vec<f64> = mb
        .scales()
        .iter()
        .map(|t| t * sandwich.outer_coeff())
        .collect();

    // Frame coordinates of the slice direction decide how far the outer
    // polydisc reaches inside the slice; the default extent adds a margin
    // beyond it so the outermost band is visible.
    let extent = match cfg.extent {
        Some(l) => {
            ensure!(l > 0.0, "extent must be positive");
            l
        }
        None => {
            let mut reach = f64::INFINITY;
            for (e, &rad) in mb.vectors().iter().zip(&outer_radii) {
                let c = v.inner(e).norm();
                if c > 1e-9 {
                    reach = reach.min(rad / c);
                }
            }
            ensure!(
                reach.is_finite(),
                "slice direction is orthogonal to the whole frame"
            );
            1.1 * reach
        }
    };

    let exact = has_exact_oracle(&d);
    let mut b = SuiteBuilder::new("slice", Some(cfg.seed));
    let mut exp = ExperimentReport::new(format!("grid {0}x{0}", cfg.grid));
    exp.series.insert("tau".into(), mb.scales().to_vec());
    exp.series.insert("inner_radii".into(), inner_radii.clone());
    exp.series.insert("outer_radii".into(), outer_radii.clone());
    exp.metrics.insert("extent".into(), extent);
    if !exact {
        exp.notes
            .push("no closed-form oracle; ball membership from the certified bracket".into());
    }

    let mut grid = String::from("x,y,in_domain,region\n");
    let mut counts = [0usize; 4];
    let mut indeterminate = 0usize;
    let n = cfg.grid;
    for iy in 0..n {
        for ix in 0..n {
            let x = -extent + 2.0 * extent * (ix as f64) / ((n - 1) as f64);
            let y = -extent + 2.0 * extent * (iy as f64) / ((n - 1) as f64);
            let lambda = C64::new(x, y);
            let z = q.add(&v.scale(lambda));
            let case = iy * n + ix;

            let in_domain = d.contains(&z);
            let diff = z.sub(&q);
            let coords: Vec<f64> = mb.vectors().iter().map(|e| diff.inner(e).norm()).collect();
            let in_inner = coords
                .iter()
                .zip(&inner_radii)
                .all(|(c, r)| c < r);
            let in_outer = coords
                .iter()
                .zip(&outer_radii)
                .all(|(c, r)| c < r);
            let in_ball = ball_membership(&d, exact, &q, &z, cfg.radius, cfg.n_support);
            if in_ball.is_none() {
                indeterminate += 1;
            }

            exp.cases += 1;
            if in_inner {
                if !in_domain {
                    b.violation(
                        &mut exp,
                        case,
                        "inner polydisc node lies in the domain",
                        serde_json::to_string(&from_vector(&z)).expect("vector serializes"),
                        1.0,
                        0.0,
                    );
                }
                if in_ball == Some(false) {
                    b.violation(
                        &mut exp,
                        case,
                        "inner polydisc node lies in the ball",
                        serde_json::to_string(&from_vector(&z)).expect("vector serializes"),
                        1.0,
                        0.0,
                    );
                }
            }
            if in_ball == Some(true) && !in_outer {
                b.violation(
                    &mut exp,
                    case,
                    "ball node lies in the outer polydisc",
                    serde_json::to_string(&from_vector(&z)).expect("vector serializes"),
                    1.0,
                    0.0,
                );
            }

            let region = if in_inner && in_ball != Some(false) {
                INNER
            } else if in_ball == Some(true) {
                BALL
            } else if in_outer {
                OUTER
            } else {
                OUTSIDE
            };
            counts[region as usize] += 1;
            grid.push_str(&format!(
                "{x},{y},{},{region}\n",
                if in_domain { 1 } else { 0 }
            ));
        }
    }

    exp.metrics
        .insert("nodes_inner".into(), counts[INNER as usize] as f64);
    exp.metrics
        .insert("nodes_ball".into(), counts[BALL as usize] as f64);
    exp.metrics
        .insert("nodes_outer".into(), counts[OUTER as usize] as f64);
    exp.metrics
        .insert("nodes_outside".into(), counts[OUTSIDE as usize] as f64);
    exp.metrics
        .insert("nodes_indeterminate".into(), indeterminate as f64);
    b.push(exp);

    let mut outcome = b.finish();
    outcome.grid = Some(grid);
    Ok(outcome)
}
