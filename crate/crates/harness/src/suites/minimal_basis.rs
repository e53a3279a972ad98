//! Random-domain invariant sweep: polytopes and complex ellipsoids get a
//! minimal basis computed at a random interior point, and every structural
//! invariant is checked, including the disjointness certificate of each
//! normalization hyperplane.

use anyhow::{bail, ensure, Context, Result};
use minbasis::basis::{
    compute_minimal_basis, rotate_to_standard, triangular_map, verify_hyperplane_disjoint,
};
use minbasis::domain::{boundary_distance, sample_interior};
use minbasis::geometry::gram_residual;
use minbasis::{CVector64, Domain64};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::config::{from_vector, MinimalBasisConfig};
use crate::report::{ExperimentReport, SuiteBuilder, SuiteOutcome};
use crate::sampling::{gaussian_c64, substream};

fn witness_json(z: &CVector64) -> String {
    serde_json::to_string(&from_vector(z)).expect("vector serializes")
}

/// Random bounded polytope: gaussian facet normals with offsets in
/// [0.5, 1.5]. Needs at least 2n + 1 facets to have a chance of being
/// bounded in real dimension 2n; resamples until the bounding box closes.
/// Barely-bounded draws with enormous boxes are rejected too: their
/// supporting data cancels past f64 resolution, which would test the
/// generator's conditioning rather than the construction.
fn random_polytope(rng: &mut ChaCha8Rng, n: usize, faces: [usize; 2]) -> Result<Domain64> {
    let lo = faces[0].max(2 * n + 1);
    let hi = faces[1].max(lo);
    for _ in 0..10_000 {
        let k = rng.gen_range(lo..=hi);
        let mut normals = Vec::with_capacity(k);
        let mut offsets = Vec::with_capacity(k);
        for _ in 0..k {
            let raw = CVector64::new((0..n).map(|_| gaussian_c64(rng)).collect());
            let Some(unit) = raw.normalized(1e-9) else {
                continue;
            };
            normals.push(unit);
            offsets.push(rng.gen_range(0.5..1.5));
        }
        if normals.len() < k {
            continue;
        }
        let d = Domain64::polytope(normals, offsets)?;
        if !d.is_bounded() {
            continue;
        }
        let extent = d
            .bounding_box()?
            .iter()
            .map(|&(lo, hi)| lo.abs().max(hi.abs()))
            .fold(0.0f64, f64::max);
        if extent <= 100.0 {
            return Ok(d);
        }
    }
    bail!("could not draw a bounded polytope after 10000 attempts");
}

/// Random complex ellipsoid with exponents in [0.5, 3].
fn random_ellipsoid(rng: &mut ChaCha8Rng, n: usize) -> Result<Domain64> {
    let exponents = (0..n).map(|_| rng.gen_range(0.5..3.0)).collect();
    Domain64::complex_ellipsoid(exponents).map_err(Into::into)
}

/// Random interior base point without rejection: jitter the deterministic
/// interior anchor by a fraction of its boundary distance. Convexity keeps
/// everything within that ball inside, so skinny polytopes cannot stall
/// the draw.
fn random_base_point(d: &Domain64, rng: &mut ChaCha8Rng) -> Result<CVector64> {
    let anchor = d.interior_point()?;
    let depth = boundary_distance(d, &anchor)?;
    let dir = CVector64::new((0..d.dim()).map(|_| gaussian_c64(rng)).collect());
    let Some(unit) = dir.normalized(1e-12) else {
        return Ok(anchor);
    };
    let rho = rng.gen_range(0.0..0.7) * depth;
    Ok(anchor.add(&unit.scale_re(rho)))
}

/// All structural invariants for one domain at one base point.
#[allow(clippy::too_many_arguments)]
fn check_domain(
    b: &mut SuiteBuilder,
    exp: &mut ExperimentReport,
    d: &Domain64,
    q: &CVector64,
    case: usize,
    samples: usize,
) -> Result<()> {
    let mb = compute_minimal_basis(d, q).context("computing the minimal basis")?;
    exp.cases += 1;

    b.check_lt(
        exp,
        case,
        "frame orthonormality residual below 1e-10",
        || witness_json(q),
        gram_residual(mb.vectors()),
        1e-10,
        0.0,
    );

    for j in 1..mb.dim() {
        b.check_lt(
            exp,
            case,
            "scales nondecreasing",
            || witness_json(q),
            mb.scales()[j - 1] - mb.scales()[j],
            0.0,
            1e-9 * (1.0 + mb.scales()[j]),
        );
    }

    let bd = boundary_distance(d, q)?;
    b.check_lt(
        exp,
        case,
        "first scale equals the boundary distance",
        || witness_json(q),
        (mb.scales()[0] - bd).abs(),
        1e-7 * (1.0 + bd),
        0.0,
    );

    // Normalization hyperplanes must miss the rotated domain; the
    // certificate is exact where a support oracle exists and sampled
    // otherwise. The basis is transported, not recomputed: a re-run could
    // break near-ties differently and leave the frame off-standard.
    let (map, image) = rotate_to_standard(&mb, d)?;
    let mb_std = mb.transport(&map)?;
    let tri = triangular_map(&image, &mb_std)?;
    for (p, nu) in tri.hyperplanes() {
        let cert = verify_hyperplane_disjoint(&image, p, nu, samples)?;
        if !cert.disjoint {
            b.violation(
                exp,
                case,
                "normalization hyperplane disjoint from the domain",
                witness_json(p),
                -cert.margin,
                0.0,
            );
        } else {
            exp.observe_slack(cert.margin);
        }
    }
    Ok(())
}

pub fn run(cfg: &MinimalBasisConfig) -> Result<SuiteOutcome> {
    ensure!(!cfg.dims.is_empty(), "dims must be nonempty");
    ensure!(
        cfg.dims.iter().all(|&n| n >= 1),
        "dims must be positive"
    );
    ensure!(cfg.faces[0] >= 3, "need at least 3 faces");
    let mut b = SuiteBuilder::new("minimal-basis", Some(cfg.seed));

    let mut poly = ExperimentReport::new("random polytopes");
    let mut rng = substream(cfg.seed, 0);
    for case in 0..cfg.polytopes {
        let n = cfg.dims[case % cfg.dims.len()];
        let d = random_polytope(&mut rng, n, cfg.faces)?;
        let q = random_base_point(&d, &mut rng)?;
        check_domain(&mut b, &mut poly, &d, &q, case, cfg.samples)?;
    }
    b.push(poly);

    let mut ell = ExperimentReport::new("random ellipsoids");
    let mut rng = substream(cfg.seed, 1);
    for case in 0..cfg.ellipsoids {
        let n = cfg.dims[case % cfg.dims.len()];
        let d = random_ellipsoid(&mut rng, n)?;
        // Pull the base point toward the center a little: the invariants
        // hold everywhere, but deep-boundary conditioning is a solver
        // stress test, not the subject here.
        let q = sample_interior(&d, &mut rng)?.scale_re(0.7);
        check_domain(&mut b, &mut ell, &d, &q, case, cfg.samples)?;
    }
    b.push(ell);

    Ok(b.finish())
}
