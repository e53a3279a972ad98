//! The minimal basis of a bounded convex domain at an interior point: the
//! scale vector of in-slice boundary distances, the unitary change of
//! coordinates that puts the basis in standard position, the triangular
//! normalization built from supporting normals at the witnesses, and
//! disjointness certificates for the hyperplanes that normalization rests
//! on.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::domain::{
    boundary_distance, nearest_boundary_in_slice, sample_interior, support_point, support_value,
    supporting_normal, DomainSpec,
};
use crate::error::{Error, Result};
use crate::geometry::{
    orthonormal_complement, unitary_to_standard, AffineSubspace, CMatrix, ComplexAffineMap,
    CVector,
};
use crate::scalar::Real;
use crate::tol;

/// Result of the extremal-slice iteration: orthonormal directions e_j with
/// boundary witnesses q + tau_j e_j, the scales tau_j nondecreasing in j.
#[derive(Clone, Debug)]
pub struct MinimalBasis<R: Real> {
    base: CVector<R>,
    vectors: Vec<CVector<R>>,
    scales: Vec<R>,
    witnesses: Vec<CVector<R>>,
}

impl<R: Real> MinimalBasis<R> {
    /// The interior point the basis was computed at.
    pub fn base(&self) -> &CVector<R> {
        &self.base
    }

    /// Orthonormal directions, one per step, in construction order.
    pub fn vectors(&self) -> &[CVector<R>] {
        &self.vectors
    }

    /// In-slice boundary distances tau_1 <= ... <= tau_n.
    pub fn scales(&self) -> &[R] {
        &self.scales
    }

    /// Boundary points realizing each scale.
    pub fn witnesses(&self) -> &[CVector<R>] {
        &self.witnesses
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Pushes the basis through a unitary affine change of coordinates:
    /// base and witnesses map over, directions map through the linear
    /// part, scales are preserved because unitary maps preserve the
    /// distances the construction is built on. Exact transport avoids the
    /// tie-breaking jitter a re-run of the iteration could introduce on
    /// near-degenerate domains.
    pub fn transport(&self, map: &ComplexAffineMap<R>) -> Result<MinimalBasis<R>> {
        if map.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: map.dim(),
            });
        }
        if !map.is_unitary() {
            return Err(Error::invalid(
                "basis transport needs a unitary affine map",
            ));
        }
        Ok(MinimalBasis {
            base: map.apply(&self.base),
            vectors: self.vectors.iter().map(|e| map.apply_linear(e)).collect(),
            scales: self.scales.clone(),
            witnesses: self.witnesses.iter().map(|w| map.apply(w)).collect(),
        })
    }
}

/// Runs the extremal-slice iteration from `q`: step j finds the nearest
/// boundary point of the domain within the affine slice through `q`
/// orthogonal to all directions found so far, records the distance as
/// tau_j and the normalized offset as e_j.
///
/// Rejects unbounded domains: every slice must meet the boundary.
pub fn compute_minimal_basis<R: Real>(
    d: &DomainSpec<R>,
    q: &CVector<R>,
) -> Result<MinimalBasis<R>> {
    let n = d.dim();
    if q.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: q.dim(),
        });
    }
    if !d.is_bounded() {
        return Err(Error::Unbounded {
            context: "minimal basis needs a bounded domain",
        });
    }
    if !d.contains(q) {
        return Err(Error::OutsideDomain {
            context: "minimal basis base point must be interior",
        });
    }

    let mut vectors: Vec<CVector<R>> = Vec::with_capacity(n);
    let mut scales: Vec<R> = Vec::with_capacity(n);
    let mut witnesses: Vec<CVector<R>> = Vec::with_capacity(n);

    for _ in 0..n {
        let dirs = orthonormal_complement(&vectors, n)?;
        let slice = AffineSubspace::new(q.clone(), dirs)?;
        let contact = nearest_boundary_in_slice(d, &slice, q)?;
        let tau = contact.distance;
        if !(tau > R::zero()) {
            return Err(Error::NonConvergence {
                context: "boundary contact at zero distance from an interior point",
            });
        }
        if let Some(&prev) = scales.last() {
            if tau < prev - R::of(1e-7) * (R::one() + prev) {
                return Err(Error::NonConvergence {
                    context: "in-slice distance decreased along the iteration",
                });
            }
        }
        let mut e = contact.point.sub(q).scale_re(tau.recip());
        // The witness lies in the slice, so e is orthogonal to the earlier
        // directions up to solver error; clean it up so the frame is
        // orthonormal to machine precision without moving the witness.
        for _ in 0..2 {
            for prev in &vectors {
                let c = e.inner(prev);
                e = e.sub(&prev.scale(c));
            }
        }
        let e = e.normalized(R::of(0.5)).ok_or(Error::NonConvergence {
            context: "witness direction collapsed into the span of earlier directions",
        })?;
        vectors.push(e);
        scales.push(tau);
        witnesses.push(contact.point);
    }

    Ok(MinimalBasis {
        base: q.clone(),
        vectors,
        scales,
        witnesses,
    })
}

/// The unitary affine change of coordinates fixing the base point that
/// sends e_j to the j-th standard vector, together with the image domain.
/// When the basis already is the standard one the original domain is
/// returned unchanged rather than wrapped in an affine image.
pub fn rotate_to_standard<R: Real>(
    mb: &MinimalBasis<R>,
    d: &DomainSpec<R>,
) -> Result<(ComplexAffineMap<R>, DomainSpec<R>)> {
    if d.dim() != mb.dim() {
        return Err(Error::DimensionMismatch {
            expected: mb.dim(),
            got: d.dim(),
        });
    }
    let u = unitary_to_standard(mb.vectors())?;
    let map = ComplexAffineMap::new(mb.base().clone(), u)?;
    if map.is_identity() {
        return Ok((ComplexAffineMap::identity(mb.base().clone()), d.clone()));
    }
    let image = DomainSpec::affine_image(map.clone(), d.clone())?;
    Ok((map, image))
}

/// Lower-triangular normalization with unit diagonal, plus the supporting
/// data each row was read off from.
#[derive(Clone, Debug)]
pub struct TriangularMap<R: Real> {
    anchor: CVector<R>,
    matrix: CMatrix<R>,
    hyperplanes: Vec<(CVector<R>, CVector<R>)>,
}

impl<R: Real> TriangularMap<R> {
    /// The base point; the map acts on z - anchor.
    pub fn anchor(&self) -> &CVector<R> {
        &self.anchor
    }

    /// Lower triangular with unit diagonal; row j has entries only up to
    /// column j.
    pub fn matrix(&self) -> &CMatrix<R> {
        &self.matrix
    }

    /// One (point, unit normal) pair per row beyond the first: the complex
    /// hyperplane through the witness inside its supporting real
    /// hyperplane, disjoint from the domain.
    pub fn hyperplanes(&self) -> &[(CVector<R>, CVector<R>)] {
        &self.hyperplanes
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// The normalized coordinates of z: matrix * (z - anchor).
    pub fn apply(&self, z: &CVector<R>) -> CVector<R> {
        self.matrix.mul_vec(&z.sub(&self.anchor))
    }
}

/// Builds the triangular normalization of a domain in standard position
/// from its minimal basis. Row j is the supporting functional at the
/// witness of step j+1, scaled to have coefficient 1 there; the geometry
/// of the iteration forces its later coefficients to vanish, which is
/// checked rather than assumed.
pub fn triangular_map<R: Real>(
    d: &DomainSpec<R>,
    mb: &MinimalBasis<R>,
) -> Result<TriangularMap<R>> {
    let n = mb.dim();
    if d.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: d.dim(),
        });
    }
    // Standard position: each basis vector is the matching standard vector,
    // including its phase.
    for (j, e) in mb.vectors().iter().enumerate() {
        let dev = e.sub(&CVector::standard(n, j)).norm();
        if dev > R::of(1e-6) {
            return Err(Error::invalid(
                "minimal basis is not in standard position; rotate the domain first",
            ));
        }
    }

    let mut matrix = CMatrix::identity(n);
    let mut hyperplanes = Vec::with_capacity(n.saturating_sub(1));
    for j in 1..n {
        let witness = &mb.witnesses()[j];
        let nu = supporting_normal(d, witness)?;
        let scale = nu.norm();
        for k in (j + 1)..n {
            if nu[k].norm() > tol::triangular::<R>() * scale {
                return Err(Error::invalid(format!(
                    "supporting normal at witness {j} has a nonzero trailing entry {k}"
                )));
            }
        }
        let pivot = nu[j].norm();
        if pivot < tol::triangular::<R>() * scale {
            return Err(Error::DegenerateNormal {
                row: j,
                pivot: pivot.as_f64(),
            });
        }
        // The functional z -> sum_k conj(nu_k / nu_j) (z_k - q_k) has
        // coefficient 1 at k = j and kills the domain's supporting
        // hyperplane through the witness.
        for k in 0..j {
            matrix.set(j, k, (nu[k] / nu[j]).conj());
        }
        hyperplanes.push((witness.clone(), nu));
    }

    Ok(TriangularMap {
        anchor: mb.base().clone(),
        matrix,
        hyperplanes,
    })
}

/// How a disjointness certificate was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CertificateMethod {
    /// The anchor point itself was tested for membership.
    PointEvaluation,
    /// Exact comparison of the support value against the plane level.
    SupportFunction,
    /// Interior sampling; refutations are sound, confirmations statistical.
    MonteCarlo,
}

/// Outcome of checking that a complex hyperplane misses the domain.
#[derive(Clone, Debug)]
pub struct DisjointnessCertificate<R: Real> {
    pub disjoint: bool,
    pub method: CertificateMethod,
    /// Certified separation slack; negative means the separating half-space
    /// inequality failed by that amount.
    pub margin: R,
    /// A domain point violating the separation, when one was found.
    pub witness: Option<CVector<R>>,
}

/// Checks that the complex hyperplane { zeta : <zeta - p, nu> = 0 } is
/// disjoint from the domain by certifying the stronger half-space
/// separation Re<zeta - p, nu> < 0 on the domain.
///
/// Uses the exact support function when the shape provides one and falls
/// back to `samples` interior draws otherwise; the sampling path can
/// soundly refute but only statistically confirm.
pub fn verify_hyperplane_disjoint<R: Real>(
    d: &DomainSpec<R>,
    p: &CVector<R>,
    nu: &CVector<R>,
    samples: usize,
) -> Result<DisjointnessCertificate<R>> {
    let n = d.dim();
    if p.dim() != n || nu.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: p.dim().max(nu.dim()),
        });
    }
    let nu_hat = nu
        .normalized(R::of(1e-14))
        .ok_or_else(|| Error::invalid("hyperplane normal is zero"))?;

    // An anchor point clearly interior refutes immediately. Anchors are
    // typically boundary witnesses that may round a hair inside, so the
    // refutation needs real depth, not bare membership.
    if d.contains(p) {
        if let Ok(depth) = boundary_distance(d, p) {
            if depth > tol::geometric::<R>() * (R::one() + p.norm()) {
                return Ok(DisjointnessCertificate {
                    disjoint: false,
                    method: CertificateMethod::PointEvaluation,
                    margin: -depth,
                    witness: Some(p.clone()),
                });
            }
        }
    }

    let level = p.inner(&nu_hat).re;
    match support_value(d, &nu_hat) {
        Ok(h) => {
            let margin = level - h;
            // level and h cancel to ~0 for a true supporting plane, so the
            // acceptable rounding debris scales with their magnitudes.
            let disjoint = margin >= -tol::certificate::<R>() * (R::one() + level.abs() + h.abs());
            let witness = if disjoint {
                None
            } else {
                support_point(d, &nu_hat).ok()
            };
            Ok(DisjointnessCertificate {
                disjoint,
                method: CertificateMethod::SupportFunction,
                margin,
                witness,
            })
        }
        Err(Error::Unbounded { .. }) => Ok(DisjointnessCertificate {
            // The domain is unbounded in the normal direction, so no
            // half-space with this normal contains it.
            disjoint: false,
            method: CertificateMethod::SupportFunction,
            margin: R::neg_infinity(),
            witness: None,
        }),
        Err(_) => {
            let mut rng = ChaCha8Rng::seed_from_u64(0xd157_0117);
            let slack = tol::certificate::<R>() * (R::one() + p.norm());
            let mut worst = R::neg_infinity();
            let mut witness = None;
            for _ in 0..samples.max(1) {
                let s = sample_interior(d, &mut rng)?;
                let val = s.sub(p).inner(&nu_hat).re;
                if val > worst {
                    worst = val;
                    if val > slack {
                        witness = Some(s);
                    }
                }
            }
            Ok(DisjointnessCertificate {
                disjoint: worst <= slack,
                method: CertificateMethod::MonteCarlo,
                margin: -worst,
                witness,
            })
        }
    }
}
