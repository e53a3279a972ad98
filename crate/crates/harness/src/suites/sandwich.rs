//! Two-sided polydisc sandwich of the invariant ball: points of the inner
//! frame polydisc must land inside the ball of radius r, and points of the
//! ball must stay inside the outer frame polydisc.

use anyhow::{Context, Result};
use minbasis::basis::compute_minimal_basis;
use minbasis::bounds::SandwichBox;
use minbasis::domain::sample_interior;
use minbasis::oracles::convex_bracket;
use minbasis::{CVector64, Domain64};

use crate::config::{from_vector, to_vector, SandwichConfig};
use crate::oracle::{exact_distance, has_exact_oracle};
use crate::report::{ExperimentReport, SuiteBuilder, SuiteOutcome};
use crate::sampling::{sample_frame_polydisc, substream};

fn witness_json(z: &CVector64) -> String {
    serde_json::to_string(&from_vector(z)).expect("vector serializes")
}

/// Upper and lower distance evaluations: the closed form when the shape
/// has one, otherwise the certified two-sided bracket.
struct DistanceSide<'a> {
    domain: &'a Domain64,
    exact: bool,
}

impl<'a> DistanceSide<'a> {
    fn new(domain: &'a Domain64) -> Self {
        DistanceSide {
            domain,
            exact: has_exact_oracle(domain),
        }
    }

    /// Certified upper bound for the distance, used against the inner
    /// inclusion. `None` when the point fell outside the domain.
    fn upper(&self, q: &CVector64, z: &CVector64) -> Option<f64> {
        if self.exact {
            exact_distance(self.domain, q, z)
        } else {
            convex_bracket(self.domain, q, z, 64).ok().map(|k| k.upper())
        }
    }

    /// Certified lower bound, used to admit points into the ball for the
    /// outer inclusion; admitting only certainly-inside points keeps the
    /// implication sound.
    fn ball_member(&self, q: &CVector64, z: &CVector64, r: f64) -> Option<bool> {
        if self.exact {
            exact_distance(self.domain, q, z).map(|d| d < r)
        } else {
            convex_bracket(self.domain, q, z, 64)
                .ok()
                .map(|k| k.upper() < r)
        }
    }
}

pub fn run(cfg: &SandwichConfig) -> Result<SuiteOutcome> {
    let d = cfg.domain.build().context("building the domain")?;
    let q = to_vector(&cfg.base_point);
    let mb = compute_minimal_basis(&d, &q).context("computing the minimal basis")?;
    let side = DistanceSide::new(&d);
    let mut b = SuiteBuilder::new("sandwich", Some(cfg.seed));

    for (ri, &r) in cfg.radii.iter().enumerate() {
        let sandwich =
            SandwichBox::new(r, d.class(), d.dim()).context("sandwich coefficients")?;
        let inner_radii: Vec<f64> = mb.scales().iter().map(|t| t * sandwich.inner_coeff()).collect();
        let outer_radii: Vec<f64> = mb.scales().iter().map(|t| t * sandwich.outer_coeff()).collect();

        let mut exp = ExperimentReport::new(format!("r={r}"));
        exp.series.insert("tau".into(), mb.scales().to_vec());
        exp.series.insert("inner_radii".into(), inner_radii.clone());
        exp.series.insert("outer_radii".into(), outer_radii.clone());
        if !side.exact {
            exp.notes
                .push("no closed-form oracle; using the certified bracket".into());
        }

        // Inner inclusion: the frame polydisc with the inner radii sits
        // inside the ball of radius r.
        let mut rng = substream(cfg.seed, 2 * ri as u64);
        for i in 0..cfg.samples {
            let z = sample_frame_polydisc(&mut rng, &q, mb.vectors(), &inner_radii);
            exp.cases += 1;
            match side.upper(&q, &z) {
                Some(dist) => {
                    b.check_lt(
                        &mut exp,
                        i,
                        "inner polydisc point has distance below r",
                        || witness_json(&z),
                        dist,
                        r,
                        1e-12,
                    );
                }
                None => {
                    b.violation(
                        &mut exp,
                        i,
                        "inner polydisc point stays in the domain",
                        witness_json(&z),
                        f64::INFINITY,
                        r,
                    );
                }
            }
        }

        // Outer inclusion: domain samples admitted into the ball by the
        // oracle stay inside the outer polydisc, coordinate by coordinate
        // in the basis frame.
        let mut rng = substream(cfg.seed, 2 * ri as u64 + 1);
        let mut admitted = 0usize;
        for i in 0..cfg.samples {
            let z = sample_interior(&d, &mut rng).context("sampling the domain")?;
            exp.cases += 1;
            if side.ball_member(&q, &z, r) != Some(true) {
                continue;
            }
            admitted += 1;
            let diff = z.sub(&q);
            for (j, e) in mb.vectors().iter().enumerate() {
                let coord = diff.inner(e).norm();
                b.check_lt(
                    &mut exp,
                    i,
                    &format!("ball point frame coordinate {j} below outer radius"),
                    || witness_json(&z),
                    coord,
                    outer_radii[j],
                    1e-12,
                );
            }
        }
        exp.metrics
            .insert("ball_samples_admitted".into(), admitted as f64);
        b.push(exp);
    }

    Ok(b.finish())
}
