//! The defining recurrence for the combination coefficients b_j(n).
//!
//! This is the ground-truth route: in the exact flavor it performs no
//! rounding at all, and every other route in the crate is validated
//! against it.

use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::scalar::Scalar;

/// The k coefficients b_0(n)..b_{k-1}(n) at one exponent n >= k.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffVector<T> {
    pub n: u64,
    pub values: Vec<T>,
}

/// Computes b_j(n) from the initial values b_j(k) = -a_j and the step
/// b_j(n+1) = b_{j-1}(n) - a_j b_{k-1}(n), with b_{-1} = 0.
///
/// Values grow like rho^n, so the exact flavor (arbitrary-precision
/// rationals) is the only safe choice for large n; fixed-width integers
/// would overflow quickly.
pub fn coeffs_recurrence<T: Scalar>(p: &Polynomial<T>, n: u64) -> Result<CoeffVector<T>> {
    let k = p.degree();
    check_exponent(n, k)?;
    let mut values: Vec<T> = p.low_coeffs().iter().map(|a| -a.clone()).collect();
    for _ in k as u64..n {
        advance(p, &mut values);
    }
    Ok(CoeffVector { n, values })
}

fn check_exponent(n: u64, k: usize) -> Result<()> {
    if n < k as u64 {
        Err(Error::ExponentRange { n, k })
    } else {
        Ok(())
    }
}

/// One recurrence step in place, downward so b_{j-1} is still the old
/// value when b_j is written.
fn advance<T: Scalar>(p: &Polynomial<T>, values: &mut [T]) {
    let k = values.len();
    let tail = values[k - 1].clone();
    for j in (1..k).rev() {
        values[j] = values[j - 1].clone() - p.coeff(j).clone() * tail.clone();
    }
    values[0] = -(p.coeff(0).clone() * tail);
}

/// Streams b(k), b(k+1), ..., b(n_max) in one forward pass, retaining
/// only the previous vector internally.
pub fn coeffs_sequence<T: Scalar>(p: &Polynomial<T>, n_max: u64) -> Result<CoeffSequence<'_, T>> {
    let k = p.degree();
    check_exponent(n_max, k)?;
    let current: Vec<T> = p.low_coeffs().iter().map(|a| -a.clone()).collect();
    Ok(CoeffSequence {
        poly: p,
        current,
        next_n: k as u64,
        n_max,
    })
}

pub struct CoeffSequence<'a, T> {
    poly: &'a Polynomial<T>,
    current: Vec<T>,
    next_n: u64,
    n_max: u64,
}

impl<T: Scalar> Iterator for CoeffSequence<'_, T> {
    type Item = CoeffVector<T>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.next_n > self.n_max {
            return None;
        }
        let item = CoeffVector {
            n: self.next_n,
            values: self.current.clone(),
        };
        self.next_n += 1;
        if self.next_n <= self.n_max {
            advance(self.poly, &mut self.current);
        }
        Some(item)
    }
}

/// b_j(n) / rho^n together with the log of the removed scale, for runs
/// far past the plain-double overflow point (n ~ 600 for rho >= 3).
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledCoeffVector {
    pub n: u64,
    /// b_j(n) / rho^n
    pub scaled: Vec<f64>,
    /// n * ln(rho); b_j(n) = scaled[j] * exp(log_scale)
    pub log_scale: f64,
}

impl ScaledCoeffVector {
    /// Recombined value; infinite when the true magnitude overflows.
    pub fn value(&self, j: usize) -> f64 {
        let s = self.scaled[j];
        if s == 0.0 {
            return 0.0;
        }
        s.signum() * (self.log_scale + s.abs().ln()).exp()
    }
}

/// Floating recurrence iterated on b_j(n)/rho^n so the working values
/// stay representable regardless of n.
pub fn coeffs_recurrence_scaled(
    p: &Polynomial<f64>,
    n: u64,
    rho: f64,
) -> Result<ScaledCoeffVector> {
    let k = p.degree();
    check_exponent(n, k)?;
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::InvalidInput(
            "scaling factor rho must be positive and finite".into(),
        ));
    }
    let log_rho = rho.ln();
    let init_scale = (-(k as f64) * log_rho).exp();
    let mut values: Vec<f64> = p.low_coeffs().iter().map(|a| -a * init_scale).collect();
    for _ in k as u64..n {
        let tail = values[k - 1];
        for j in (1..k).rev() {
            values[j] = (values[j - 1] - p.coeff(j) * tail) / rho;
        }
        values[0] = -(p.coeff(0) * tail) / rho;
    }
    Ok(ScaledCoeffVector {
        n,
        scaled: values,
        log_scale: n as f64 * log_rho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;

    fn exact(low: &[i64]) -> Polynomial<BigRational> {
        Polynomial::from_i64_low(low).unwrap()
    }

    fn ints(values: &[i64]) -> Vec<BigRational> {
        values.iter().map(|&v| BigRational::from_i64(v)).collect()
    }

    #[test]
    fn initial_values_are_negated_coefficients() {
        let p = exact(&[-12, 16, -7]);
        let b = coeffs_recurrence(&p, 3).unwrap();
        assert_eq!(b.values, ints(&[12, -16, 7]));
    }

    #[test]
    fn first_step_matches_closed_form() {
        let p = exact(&[-12, 16, -7]);
        let b = coeffs_recurrence(&p, 4).unwrap();
        assert_eq!(b.values, ints(&[84, -100, 33]));
    }

    #[test]
    fn fibonacci_values() {
        let p = exact(&[-1, -1]);
        assert_eq!(coeffs_recurrence(&p, 10).unwrap().values, ints(&[34, 55]));
        assert_eq!(coeffs_recurrence(&p, 12).unwrap().values, ints(&[89, 144]));
    }

    #[test]
    fn period_four_cosine_pattern() {
        let p = exact(&[1, 0]);
        let b0: Vec<BigRational> = coeffs_sequence(&p, 7)
            .unwrap()
            .map(|c| c.values[0].clone())
            .collect();
        assert_eq!(b0, ints(&[-1, 0, 1, 0, -1, 0]));
    }

    #[test]
    fn zero_root_kills_b0() {
        let p = exact(&[0, 6, -5]);
        for c in coeffs_sequence(&p, 30).unwrap() {
            assert!(c.values[0].is_zero(), "b_0({}) != 0", c.n);
        }
    }

    #[test]
    fn sequence_matches_pointwise_and_starts_at_k() {
        let p = exact(&[-12, 16, -7]);
        let seq: Vec<_> = coeffs_sequence(&p, 12).unwrap().collect();
        assert_eq!(seq.len(), 10);
        assert_eq!(seq[0].values, ints(&[12, -16, 7]));
        for c in &seq {
            assert_eq!(c.values, coeffs_recurrence(&p, c.n).unwrap().values);
        }
    }

    #[test]
    fn below_degree_is_an_error() {
        let p = exact(&[-1, -1]);
        assert!(matches!(
            coeffs_recurrence(&p, 1),
            Err(Error::ExponentRange { n: 1, k: 2 })
        ));
        assert!(matches!(
            coeffs_sequence(&p, 0),
            Err(Error::ExponentRange { .. })
        ));
    }

    #[test]
    fn integer_coefficients_stay_integers() {
        let p = exact(&[-4, -15, -20, 10, -5]);
        for c in coeffs_sequence(&p, 40).unwrap() {
            assert!(c.values.iter().all(|v| v.is_integer()), "n = {}", c.n);
        }
    }

    #[test]
    fn scaled_mode_agrees_with_plain_floats() {
        let p = Polynomial::<f64>::from_i64_low(&[-1, -1]).unwrap();
        let rho = (1.0 + 5.0f64.sqrt()) / 2.0;
        let scaled = coeffs_recurrence_scaled(&p, 60, rho).unwrap();
        let exact_p = exact(&[-1, -1]);
        let reference = coeffs_recurrence(&exact_p, 60).unwrap();
        for j in 0..2 {
            let want = reference.values[j].to_f64();
            let got = scaled.value(j);
            assert!((got - want).abs() <= 1e-9 * want.abs());
        }
    }

    #[test]
    fn scaled_mode_survives_huge_exponents() {
        // b_1(n) = f_n ~ phi^n / sqrt(5), so the scaled value tends to
        // 1/sqrt(5) while the plain recurrence would overflow.
        let p = Polynomial::<f64>::from_i64_low(&[-1, -1]).unwrap();
        let rho = (1.0 + 5.0f64.sqrt()) / 2.0;
        let scaled = coeffs_recurrence_scaled(&p, 1600, rho).unwrap();
        assert!(scaled.scaled.iter().all(|v| v.is_finite()));
        assert!((scaled.scaled[1] - 1.0 / 5.0f64.sqrt()).abs() < 1e-6);
        // f_1600 itself is far past the double range
        assert!(scaled.value(1).is_infinite());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            /// The emitted sequence satisfies the defining shift relation
            /// b_j(n+1) - b_{j-1}(n) + a_j b_{k-1}(n) = 0.
            #[test]
            fn shift_consistency(low in proptest::collection::vec(-9i64..=9, 1..=6)) {
                let p = exact(&low);
                let k = p.degree();
                let seq: Vec<_> = coeffs_sequence(&p, k as u64 + 12).unwrap().collect();
                for w in seq.windows(2) {
                    let (prev, next) = (&w[0], &w[1]);
                    for j in 0..k {
                        let lhs = next.values[j].clone()
                            - if j >= 1 { prev.values[j - 1].clone() } else { BigRational::zero() }
                            + p.coeff(j).clone() * prev.values[k - 1].clone();
                        prop_assert!(lhs.is_zero());
                    }
                }
            }
        }
    }
}
