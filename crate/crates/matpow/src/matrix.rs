//! Dense square matrices over either arithmetic flavor.

use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::scalar::Scalar;

/// A dense k-by-k matrix, row-major, with a uniform scalar flavor.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix<T> {
    dim: usize,
    entries: Vec<T>,
}

impl<T: Scalar> SquareMatrix<T> {
    /// Builds a matrix from rows, rejecting non-square shapes and
    /// non-finite entries.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::Dimension("matrix must have at least one row".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Dimension(format!(
                    "matrix is not square: {dim} rows but row {i} has {} entries",
                    row.len()
                )));
            }
        }
        let entries: Vec<T> = rows.into_iter().flatten().collect();
        if let Some(bad) = entries.iter().position(|e| !e.is_finite_value()) {
            return Err(Error::InvalidInput(format!(
                "matrix entry at flat index {bad} is not finite"
            )));
        }
        Ok(Self { dim, entries })
    }

    /// Convenience constructor from integer literals.
    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| T::from_i64(v)).collect())
                .collect(),
        )
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = T::one();
        }
        m
    }

    pub fn zero(dim: usize) -> Self {
        assert!(dim > 0, "matrix dimension must be positive");
        Self {
            dim,
            entries: vec![T::zero(); dim * dim],
        }
    }

    /// Companion matrix of a monic polynomial: its characteristic
    /// polynomial is the input.
    pub fn companion(p: &Polynomial<T>) -> Self {
        let k = p.degree();
        let mut m = Self::zero(k);
        for i in 1..k {
            m.entries[i * k + (i - 1)] = T::one();
        }
        for i in 0..k {
            m.entries[i * k + (k - 1)] = -p.coeff(i).clone();
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, row: usize, col: usize) -> &T {
        &self.entries[row * self.dim + col]
    }

    /// Row-major flat view of the entries.
    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in matrix product");
        let k = self.dim;
        let mut out = Self::zero(k);
        for i in 0..k {
            for l in 0..k {
                let a = self.entries[i * k + l].clone();
                if a.is_zero() {
                    continue;
                }
                for j in 0..k {
                    let t = a.clone() * other.entries[l * k + j].clone();
                    out.entries[i * k + j] = out.entries[i * k + j].clone() + t;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in matrix sum");
        Self {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        }
    }

    pub fn scale(&self, s: &T) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e.clone() * s.clone()).collect(),
        }
    }

    /// Adds s to every diagonal entry.
    pub fn add_scaled_identity(mut self, s: &T) -> Self {
        let k = self.dim;
        for i in 0..k {
            self.entries[i * k + i] = self.entries[i * k + i].clone() + s.clone();
        }
        self
    }

    pub fn trace(&self) -> T {
        let k = self.dim;
        (0..k).fold(T::zero(), |acc, i| {
            acc + self.entries[i * k + i].clone()
        })
    }

    pub fn to_f64(&self) -> SquareMatrix<f64> {
        SquareMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(Scalar::to_f64).collect(),
        }
    }

    /// Largest entry magnitude, measured in doubles.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Infinity norm (max absolute row sum), measured in doubles.
    pub fn norm_inf(&self) -> f64 {
        let k = self.dim;
        (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| self.entries[i * k + j].to_f64().abs())
                    .sum::<f64>()
            })
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn rejects_non_square() {
        let err = SquareMatrix::<f64>::from_rows(vec![vec![1.0, 2.0], vec![3.0]]).unwrap_err();
        assert!(matches!(err, Error::Dimension(_)));
    }

    #[test]
    fn rejects_non_finite() {
        let err =
            SquareMatrix::<f64>::from_rows(vec![vec![1.0, f64::NAN], vec![0.0, 1.0]]).unwrap_err();
        assert!(matches!(err, Error::InvalidInput(_)));
    }

    #[test]
    fn product_and_trace() {
        let a = SquareMatrix::<BigRational>::from_i64_rows(&[&[1, 1], &[1, 0]]).unwrap();
        let sq = a.mul(&a);
        let expect = SquareMatrix::<BigRational>::from_i64_rows(&[&[2, 1], &[1, 1]]).unwrap();
        assert_eq!(sq, expect);
        assert_eq!(sq.trace(), BigRational::from_i64(3));
    }

    #[test]
    fn companion_shape() {
        let p = Polynomial::<f64>::from_i64_low(&[-12, 16, -7]).unwrap();
        let c = SquareMatrix::companion(&p);
        assert_eq!(c.entry(0, 2), &12.0);
        assert_eq!(c.entry(1, 2), &-16.0);
        assert_eq!(c.entry(2, 2), &7.0);
        assert_eq!(c.entry(1, 0), &1.0);
        assert_eq!(c.entry(2, 1), &1.0);
    }
}
