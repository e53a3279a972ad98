//! Shared numeric tolerances.
//!
//! Call sites never hardcode epsilons. Two regimes cover the crate:
//! linear-algebra identities (orthonormality, unitarity, triangular
//! structure) and geometric solvers (boundary contact, certificates).
//! Mixing per-call-site epsilons invites drift between the solvers and the
//! checks that consume their output, so everything reads from here.

use crate::scalar::Real;

/// Residual bound for orthonormality, unitarity, and rank decisions.
#[inline]
pub fn linear<R: Real>() -> R {
    R::of(1e-10)
}

/// Convergence and consistency bound for boundary-contact solvers.
#[inline]
pub fn geometric<R: Real>() -> R {
    R::of(1e-7)
}

/// Slack below which a signed certificate margin counts as zero.
#[inline]
pub fn certificate<R: Real>() -> R {
    R::of(1e-9)
}

/// Supporting normals feeding triangular rows: coefficients past the pivot
/// must vanish to this tolerance and the pivot must exceed it.
#[inline]
pub fn triangular<R: Real>() -> R {
    R::of(1e-8)
}

/// artanh saturates to +inf for arguments at or beyond `1 - artanh_guard()`.
#[inline]
pub fn artanh_guard<R: Real>() -> R {
    R::of(1e-15)
}
