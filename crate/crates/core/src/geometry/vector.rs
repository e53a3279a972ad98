//! Dense complex vectors.

use std::ops::Index;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Column vector over ℂ.
#[derive(Clone, Debug, PartialEq)]
pub struct CVector<R> {
    entries: Vec<Complex<R>>,
}

impl<R: Real> CVector<R> {
    pub fn new(entries: Vec<Complex<R>>) -> Self {
        Self { entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: vec![Complex::new(R::zero(), R::zero()); dim],
        }
    }

    /// k-th standard basis vector of ℂ^dim.
    pub fn standard(dim: usize, k: usize) -> Self {
        assert!(k < dim, "standard basis index out of range");
        let mut v = Self::zeros(dim);
        v.entries[k] = Complex::new(R::one(), R::zero());
        v
    }

    pub fn from_reals(values: &[R]) -> Self {
        Self {
            entries: values
                .iter()
                .map(|&x| Complex::new(x, R::zero()))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn as_slice(&self) -> &[Complex<R>] {
        &self.entries
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex<R>> {
        self.entries.iter()
    }

    pub fn into_entries(self) -> Vec<Complex<R>> {
        self.entries
    }

    pub fn set(&mut self, k: usize, value: Complex<R>) {
        self.entries[k] = value;
    }

    /// Σ_j |v_j|².
    pub fn norm_sqr(&self) -> R {
        self.entries
            .iter()
            .fold(R::zero(), |acc, z| acc + z.norm_sqr())
    }

    pub fn norm(&self) -> R {
        self.norm_sqr().sqrt()
    }

    /// Hermitian inner product Σ_j self_j · conj(other_j).
    /// Linear in `self`, conjugate-linear in `other`.
    pub fn inner(&self, other: &Self) -> Complex<R> {
        assert_eq!(self.dim(), other.dim(), "inner product dimension mismatch");
        self.entries
            .iter()
            .zip(other.entries.iter())
            .fold(Complex::new(R::zero(), R::zero()), |acc, (a, b)| {
                acc + a * b.conj()
            })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "vector sum dimension mismatch");
        Self {
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "vector diff dimension mismatch");
        Self {
            entries: self
                .entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, c: Complex<R>) -> Self {
        Self {
            entries: self.entries.iter().map(|z| z * c).collect(),
        }
    }

    pub fn scale_re(&self, r: R) -> Self {
        Self {
            entries: self.entries.iter().map(|z| z.scale(r)).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        Self {
            entries: self.entries.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn dist(&self, other: &Self) -> R {
        self.sub(other).norm()
    }

    /// Unit vector in the same direction; `None` for norms below `floor`.
    pub fn normalized(&self, floor: R) -> Option<Self> {
        let n = self.norm();
        if n <= floor {
            None
        } else {
            Some(self.scale_re(n.recip()))
        }
    }
}

impl<R: Real> Index<usize> for CVector<R> {
    type Output = Complex<R>;

    fn index(&self, k: usize) -> &Complex<R> {
        &self.entries[k]
    }
}

/// Σ_j u_j · conj(v_j), with dimension validation.
pub fn hermitian_inner<R: Real>(u: &CVector<R>, v: &CVector<R>) -> Result<Complex<R>> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: u.dim(),
            got: v.dim(),
        });
    }
    Ok(u.inner(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn inner_conjugates_second_argument() {
        let u = CVector::new(vec![c(1.0, 0.0), c(0.0, 1.0)]);
        let v = CVector::new(vec![c(0.0, 1.0), c(1.0, 0.0)]);
        // 1*conj(i) + i*conj(1) = -i + i = 0
        let ip = hermitian_inner(&u, &v).unwrap();
        assert!(ip.norm() < 1e-15);
        // <u, u> = 2 real
        let n = hermitian_inner(&u, &u).unwrap();
        assert!((n.re - 2.0).abs() < 1e-15 && n.im.abs() < 1e-15);
    }

    #[test]
    fn inner_sesquilinearity() {
        let u = CVector::new(vec![c(0.3, -0.2), c(1.5, 0.4)]);
        let v = CVector::new(vec![c(-0.7, 0.1), c(0.2, 0.9)]);
        let s = c(0.6, -1.1);
        let lhs = u.scale(s).inner(&v);
        let rhs = s * u.inner(&v);
        assert!((lhs - rhs).norm() < 1e-14);
        let lhs2 = u.inner(&v.scale(s));
        let rhs2 = s.conj() * u.inner(&v);
        assert!((lhs2 - rhs2).norm() < 1e-14);
    }

    #[test]
    fn mismatched_dims_error() {
        let u = CVector::<f64>::zeros(2);
        let v = CVector::<f64>::zeros(3);
        assert!(matches!(
            hermitian_inner(&u, &v),
            Err(Error::DimensionMismatch { expected: 2, got: 3 })
        ));
    }
}
