//! Dense complex matrices with just enough linear algebra for this crate:
//! products, adjoints, and LU-based inversion with partial pivoting.

use num_complex::Complex;

use super::vector::CVector;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Row-major dense matrix over ℂ.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<R>>,
}

impl<R: Real> CMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex::new(R::zero(), R::zero()); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Complex::new(R::one(), R::zero()));
        }
        m
    }

    /// Builds a matrix whose i-th row is `rows[i]`.
    pub fn from_rows(rows: &[CVector<R>]) -> Self {
        assert!(!rows.is_empty(), "matrix needs at least one row");
        let cols = rows[0].dim();
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.dim(), cols, "ragged rows");
            for j in 0..cols {
                m.set(i, j, r[j]);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex<R> {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex<R>) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> CVector<R> {
        CVector::new(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn mul_vec(&self, v: &CVector<R>) -> CVector<R> {
        assert_eq!(self.cols, v.dim(), "matrix-vector dimension mismatch");
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut acc = Complex::new(R::zero(), R::zero());
            for j in 0..self.cols {
                acc += self.get(i, j) * v[j];
            }
            out.push(acc);
        }
        CVector::new(out)
    }

    pub fn mul_mat(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                for j in 0..other.cols {
                    out.set(i, j, out.get(i, j) + a * other.get(k, j));
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn max_abs(&self) -> R {
        self.data
            .iter()
            .fold(R::zero(), |acc, z| acc.max(z.norm()))
    }

    /// max |(M†M - I)_{ij}|, the unitarity residual (square matrices).
    pub fn unitarity_residual(&self) -> R {
        assert_eq!(self.rows, self.cols, "unitarity needs a square matrix");
        let g = self.adjoint().mul_mat(self);
        let mut worst = R::zero();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let target = if i == j { R::one() } else { R::zero() };
                let d = (g.get(i, j) - Complex::new(target, R::zero())).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    /// Inverse via LU with partial pivoting. Fails when the pivot ratio
    /// min|pivot| / max|entry| drops below 1e-12.
    pub fn inverse(&self) -> Result<Self> {
        assert_eq!(self.rows, self.cols, "inverse needs a square matrix");
        let n = self.rows;
        let scale = self.max_abs().max(R::one());
        let zero = Complex::new(R::zero(), R::zero());

        // Augmented Gauss-Jordan on [A | I].
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let mut min_pivot = R::infinity();
        for col in 0..n {
            let mut pivot_row = col;
            let mut pivot_abs = a.get(col, col).norm();
            for r in col + 1..n {
                let v = a.get(r, col).norm();
                if v > pivot_abs {
                    pivot_abs = v;
                    pivot_row = r;
                }
            }
            min_pivot = min_pivot.min(pivot_abs);
            if pivot_abs <= scale * R::of(1e-12) {
                return Err(Error::Singular {
                    pivot_ratio: (pivot_abs / scale).as_f64(),
                });
            }
            if pivot_row != col {
                for j in 0..n {
                    let t = a.get(col, j);
                    a.set(col, j, a.get(pivot_row, j));
                    a.set(pivot_row, j, t);
                    let t = inv.get(col, j);
                    inv.set(col, j, inv.get(pivot_row, j));
                    inv.set(pivot_row, j, t);
                }
            }
            let p = a.get(col, col);
            for j in 0..n {
                a.set(col, j, a.get(col, j) / p);
                inv.set(col, j, inv.get(col, j) / p);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col);
                if f == zero {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, a.get(r, j) - f * a.get(col, j));
                    inv.set(r, j, inv.get(r, j) - f * inv.get(col, j));
                }
            }
        }
        let _ = min_pivot;
        Ok(inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    fn c(re: f64, im: f64) -> C {
        C::new(re, im)
    }

    #[test]
    fn inverse_roundtrip() {
        let mut m = CMatrix::zeros(3, 3);
        let vals = [
            [c(1.0, 0.2), c(0.3, -0.1), c(0.0, 0.5)],
            [c(-0.4, 0.0), c(2.0, 0.3), c(0.1, 0.1)],
            [c(0.2, -0.6), c(0.0, 0.0), c(1.5, -0.2)],
        ];
        for (i, row) in vals.iter().enumerate() {
            for (j, &val) in row.iter().enumerate() {
                m.set(i, j, val);
            }
        }
        let inv = m.inverse().unwrap();
        let prod = m.mul_mat(&inv);
        let id = CMatrix::<f64>::identity(3);
        for i in 0..3 {
            for j in 0..3 {
                assert!((prod.get(i, j) - id.get(i, j)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn singular_detected() {
        let mut m = CMatrix::zeros(2, 2);
        m.set(0, 0, c(1.0, 0.0));
        m.set(0, 1, c(2.0, 0.0));
        m.set(1, 0, c(0.5, 0.0));
        m.set(1, 1, c(1.0, 0.0));
        assert!(matches!(m.inverse(), Err(Error::Singular { .. })));
    }

    #[test]
    fn adjoint_of_product() {
        let mut a = CMatrix::zeros(2, 2);
        a.set(0, 0, c(1.0, 1.0));
        a.set(0, 1, c(0.0, 2.0));
        a.set(1, 0, c(-1.0, 0.0));
        a.set(1, 1, c(0.5, -0.5));
        let b = a.inverse().unwrap();
        let lhs = a.mul_mat(&b).adjoint();
        let rhs = b.adjoint().mul_mat(&a.adjoint());
        for i in 0..2 {
            for j in 0..2 {
                assert!((lhs.get(i, j) - rhs.get(i, j)).norm() < 1e-12);
            }
        }
    }
}
