//! Monic polynomials, their characteristic-polynomial extraction, and the
//! prefix polynomials that appear in every coefficient formula.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::Scalar;

/// A monic polynomial x^k + a_{k-1} x^{k-1} + ... + a_0, stored as the
/// low coefficients a_0..a_{k-1}. The leading 1 is implicit; non-monic
/// inputs are rejected at construction sites rather than normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    low: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    /// Builds from the low coefficients a_0..a_{k-1}; the degree is the
    /// length of the slice.
    pub fn from_low_coeffs(low: Vec<T>) -> Result<Self> {
        if low.is_empty() {
            return Err(Error::Dimension(
                "polynomial degree must be at least 1".into(),
            ));
        }
        if let Some(bad) = low.iter().position(|c| !c.is_finite_value()) {
            return Err(Error::InvalidInput(format!(
                "coefficient a_{bad} is not finite"
            )));
        }
        Ok(Self { low })
    }

    pub fn from_i64_low(low: &[i64]) -> Result<Self> {
        Self::from_low_coeffs(low.iter().map(|&v| T::from_i64(v)).collect())
    }

    pub fn degree(&self) -> usize {
        self.low.len()
    }

    /// The coefficient a_j, 0 <= j < k.
    pub fn coeff(&self, j: usize) -> &T {
        &self.low[j]
    }

    pub fn low_coeffs(&self) -> &[T] {
        &self.low
    }

    /// All coefficients low-to-high, including the leading 1.
    pub fn full_coeffs(&self) -> Vec<T> {
        let mut c = self.low.clone();
        c.push(T::one());
        c
    }

    /// Horner evaluation, highest degree first, so the rounding pattern
    /// is identical on every platform.
    pub fn eval(&self, s: &T) -> T {
        let mut acc = T::one();
        for a in self.low.iter().rev() {
            acc = acc * s.clone() + a.clone();
        }
        acc
    }

    /// The m-fold derivative as an explicit (non-monic) polynomial.
    /// m = 0 returns the polynomial itself, m = k the constant k!,
    /// and m > k the zero polynomial.
    pub fn derivative_m(&self, m: usize) -> DensePoly<T> {
        let mut d = DensePoly::new(self.full_coeffs());
        for _ in 0..m {
            d = d.derivative();
        }
        d
    }

    /// The prefix polynomial sum of a_l x^l for l <= j. Accepts j = -1
    /// for the empty (zero) prefix; other out-of-range j is an error.
    pub fn prefix_poly(&self, j: i64) -> Result<DensePoly<T>> {
        let k = self.degree() as i64;
        if j < -1 || j > k - 1 {
            return Err(Error::IndexRange {
                index: j,
                min: -1,
                max: k - 1,
            });
        }
        let take = (j + 1) as usize;
        Ok(DensePoly::new(self.low[..take].to_vec()))
    }

    pub fn to_f64_poly(&self) -> Polynomial<f64> {
        Polynomial {
            low: self.low.iter().map(Scalar::to_f64).collect(),
        }
    }
}

impl Polynomial<f64> {
    /// Horner evaluation at a complex point, highest degree first.
    pub fn eval_complex(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for a in self.low.iter().rev() {
            acc = acc * s + a;
        }
        acc
    }
}

/// A polynomial with an explicit (possibly non-monic, possibly zero)
/// coefficient list, low-to-high. Derivatives and prefixes live here.
#[derive(Debug, Clone, PartialEq)]
pub struct DensePoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> DensePoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    /// Coefficients low-to-high; empty means the zero polynomial.
    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.clone() * T::from_i64(i as i64))
            .collect();
        Self::new(coeffs)
    }

    pub fn eval(&self, s: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * s.clone() + c.clone();
        }
        acc
    }
}

impl DensePoly<f64> {
    pub fn eval_complex(&self, s: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }
}

use num_traits::Zero;

/// Monic characteristic polynomial of a square matrix by the
/// Faddeev-LeVerrier trace recursion. Works in the matrix's own flavor,
/// so integer and rational inputs stay exact and no eigenvalues are
/// ever computed.
///
/// A Cayley-Hamilton residual check guards the floating flavor: P(A)
/// must vanish, and a residual above 1e-8 * max(1, |A|_inf)^k is
/// reported as an accuracy error. Exact inputs satisfy the identity
/// identically.
pub fn char_poly<T: Scalar>(m: &SquareMatrix<T>) -> Result<Polynomial<T>> {
    let k = m.dim();
    let mut low = vec![T::zero(); k];
    // M_1 = I; c_{k-i} = -tr(A M_i)/i; M_{i+1} = A M_i + c_{k-i} I.
    let mut mi = SquareMatrix::<T>::identity(k);
    for i in 1..=k {
        let ami = m.mul(&mi);
        let c = -(ami.trace() / T::from_i64(i as i64));
        low[k - i] = c;
        if i < k {
            mi = ami.add_scaled_identity(&low[k - i]);
        }
    }
    let p = Polynomial { low };

    // Cayley-Hamilton residual: Horner over matrices.
    let mut r = SquareMatrix::<T>::identity(k);
    for j in (0..k).rev() {
        r = m.mul(&r).add_scaled_identity(p.coeff(j));
    }
    let residual = r.max_abs();
    let allowed = 1e-8 * m.norm_inf().max(1.0).powi(k as i32);
    // NaN residuals must fail too, hence the negated form.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if !(residual <= allowed) {
        return Err(Error::Accuracy(format!(
            "Cayley-Hamilton residual {residual:.3e} exceeds {allowed:.3e}; \
             the matrix is too ill-conditioned for the floating flavor"
        )));
    }
    Ok(p)
}
