//! Orthonormal frames: modified Gram-Schmidt with re-orthogonalization,
//! orthonormal complements, and the unitary taking a frame to the standard
//! basis.

use num_complex::Complex;

use super::matrix::CMatrix;
use super::vector::CVector;
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::tol;

/// Phase threshold: the first entry with modulus above this is rotated to
/// the positive real axis.
fn phase_floor<R: Real>() -> R {
    R::of(1e-8)
}

/// Two modified Gram-Schmidt passes; the second pass mops up the O(eps)
/// residue the first leaves on nearly dependent inputs.
fn project_out<R: Real>(v: &CVector<R>, frame: &[CVector<R>]) -> CVector<R> {
    let mut w = v.clone();
    for _ in 0..2 {
        for b in frame {
            let c = w.inner(b);
            w = w.sub(&b.scale(c));
        }
    }
    w
}

/// Multiplies by a unit phase so the first entry of modulus > 1e-8 becomes
/// real positive. Deterministic tie-breaking for complement frames.
fn canonical_phase<R: Real>(v: &CVector<R>) -> CVector<R> {
    let floor = phase_floor::<R>();
    for z in v.iter() {
        let m = z.norm();
        if m > floor {
            let phase = Complex::new(z.re / m, -z.im / m);
            return v.scale(phase);
        }
    }
    v.clone()
}

/// Orthonormalizes `vectors` in order. Errors with the offending index when
/// a vector lies in the span of its predecessors (residual below the linear
/// tolerance).
pub fn orthonormalize<R: Real>(vectors: &[CVector<R>]) -> Result<Vec<CVector<R>>> {
    let mut frame: Vec<CVector<R>> = Vec::with_capacity(vectors.len());
    for (index, v) in vectors.iter().enumerate() {
        let w = project_out(v, &frame);
        let floor = tol::linear::<R>() * (R::one() + v.norm());
        match w.normalized(floor) {
            Some(u) => frame.push(u),
            None => return Err(Error::RankDeficient { index }),
        }
    }
    Ok(frame)
}

/// Orthonormal basis of the orthogonal complement of span(`vectors`) in
/// ℂ^`ambient`. The input need not be orthonormal, only independent.
///
/// Deterministic: candidates are the standard basis vectors, picked greedily
/// by largest residual (lowest index on ties), each rotated to canonical
/// phase. Empty input yields the standard basis itself.
pub fn orthonormal_complement<R: Real>(
    vectors: &[CVector<R>],
    ambient: usize,
) -> Result<Vec<CVector<R>>> {
    for v in vectors {
        if v.dim() != ambient {
            return Err(Error::DimensionMismatch {
                expected: ambient,
                got: v.dim(),
            });
        }
    }
    if vectors.len() > ambient {
        return Err(Error::RankDeficient {
            index: ambient,
        });
    }
    let mut frame = orthonormalize(vectors)?;
    let mut out = Vec::with_capacity(ambient - frame.len());
    while frame.len() < ambient {
        let mut best: Option<(usize, R, CVector<R>)> = None;
        for j in 0..ambient {
            let cand = project_out(&CVector::standard(ambient, j), &frame);
            let norm = cand.norm();
            if best.as_ref().is_none_or(|(_, n, _)| norm > *n) {
                best = Some((j, norm, cand));
            }
        }
        let (_, norm, cand) = best.expect("ambient > 0");
        // The largest residual is at least sqrt((ambient-k)/ambient) > 0 for
        // an orthonormal frame of size k < ambient.
        if norm <= R::of(1e-6) {
            return Err(Error::NonConvergence {
                context: "complement residuals collapsed; frame not orthonormal",
            });
        }
        let unit = cand.scale_re(norm.recip());
        let unit = canonical_phase(&unit);
        frame.push(unit.clone());
        out.push(unit);
    }
    Ok(out)
}

/// max_{i,j} |<b_i, b_j> - delta_ij| over a putative orthonormal frame.
pub fn gram_residual<R: Real>(basis: &[CVector<R>]) -> R {
    let mut worst = R::zero();
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            let target = if i == j { R::one() } else { R::zero() };
            let d = (bi.inner(bj) - Complex::new(target, R::zero())).norm();
            worst = worst.max(d);
        }
    }
    worst
}

/// The unitary U with U b_k = e_k for an orthonormal basis {b_k} of ℂ^n.
/// Rows of U are the conjugated basis vectors.
pub fn unitary_to_standard<R: Real>(basis: &[CVector<R>]) -> Result<CMatrix<R>> {
    let n = basis.len();
    if n == 0 {
        return Err(Error::invalid("empty basis"));
    }
    for b in basis {
        if b.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: b.dim(),
            });
        }
    }
    let residual = gram_residual(basis);
    if residual > tol::linear::<R>() {
        return Err(Error::NotOrthonormal {
            residual: residual.as_f64(),
        });
    }
    let rows: Vec<CVector<R>> = basis.iter().map(|b| b.conj()).collect();
    Ok(CMatrix::from_rows(&rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;
    type V = CVector<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn complement_of_first_coordinate() {
        let e1 = V::standard(2, 0);
        let comp = orthonormal_complement(&[e1], 2).unwrap();
        assert_eq!(comp.len(), 1);
        assert!((comp[0][0].norm()) < 1e-14);
        // canonical phase: entry is +1 exactly
        assert!((comp[0][1] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn complement_of_empty_is_standard_basis() {
        let comp = orthonormal_complement::<f64>(&[], 2).unwrap();
        assert_eq!(comp.len(), 2);
        assert!((comp[0][0] - c(1.0, 0.0)).norm() < 1e-15);
        assert!((comp[1][1] - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn complement_orthogonal_to_input_and_orthonormal() {
        let v1 = V::new(vec![c(0.6, 0.3), c(-0.2, 0.5), c(0.1, -0.4)]);
        let v2 = V::new(vec![c(0.0, 1.0), c(0.7, 0.0), c(0.3, 0.3)]);
        let comp = orthonormal_complement(&[v1.clone(), v2.clone()], 3).unwrap();
        assert_eq!(comp.len(), 1);
        let u = &comp[0];
        assert!((u.norm() - 1.0).abs() < 1e-12);
        assert!(u.inner(&v1).norm() < 1e-12);
        assert!(u.inner(&v2).norm() < 1e-12);
        // phase convention: first sizable entry real positive
        let lead = u.iter().find(|z| z.norm() > 1e-8).unwrap();
        assert!(lead.im.abs() < 1e-12 && lead.re > 0.0);
    }

    #[test]
    fn dependent_input_rejected() {
        let v1 = V::new(vec![c(1.0, 0.0), c(0.0, 1.0)]);
        let v2 = v1.scale(c(0.0, 2.0));
        assert!(matches!(
            orthonormal_complement(&[v1, v2], 2),
            Err(Error::RankDeficient { index: 1 })
        ));
    }

    #[test]
    fn unitary_swaps_exchanged_frame() {
        let b = [V::standard(2, 1), V::standard(2, 0)];
        let u = unitary_to_standard(&b).unwrap();
        let img0 = u.mul_vec(&b[0]);
        let img1 = u.mul_vec(&b[1]);
        assert!((img0[0] - c(1.0, 0.0)).norm() < 1e-14);
        assert!((img1[1] - c(1.0, 0.0)).norm() < 1e-14);
        assert!(u.unitarity_residual() < 1e-14);
    }

    #[test]
    fn unitary_rejects_skewed_frame() {
        let b = [
            V::new(vec![c(1.0, 0.0), c(0.0, 0.0)]),
            V::new(vec![c(0.5, 0.0), c(0.8660254037844386, 0.0)]),
        ];
        assert!(matches!(
            unitary_to_standard(&b),
            Err(Error::NotOrthonormal { .. })
        ));
    }

    #[test]
    fn unitary_maps_random_frame_to_standard() {
        let v1 = V::new(vec![c(0.4, -0.8), c(0.2, 0.1), c(0.0, 0.3)]);
        let v2 = V::new(vec![c(0.1, 0.0), c(-0.5, 0.7), c(0.4, 0.0)]);
        let v3 = V::new(vec![c(0.0, 0.2), c(0.3, 0.3), c(-0.6, 0.1)]);
        let frame = orthonormalize(&[v1, v2, v3]).unwrap();
        let u = unitary_to_standard(&frame).unwrap();
        for (k, b) in frame.iter().enumerate() {
            let img = u.mul_vec(b);
            for j in 0..3 {
                let want = if j == k { 1.0 } else { 0.0 };
                assert!((img[j] - c(want, 0.0)).norm() < 1e-12);
            }
        }
    }
}
