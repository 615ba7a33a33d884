//! Reconstruction of A^n from coefficient vectors, the repeated-squaring
//! oracle, and the route-comparison report.

use std::time::Instant;

use num_rational::BigRational;

use crate::asymptotic::{build_estimate, eval_estimate};
use crate::closed_form::coeffs_closed_distinct;
use crate::contour::{coeffs_contour, QuadratureConfig};
use crate::eigen::{find_roots_default, DEFAULT_DOM_TOL};
use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::polynomial::char_poly;
use crate::recurrence::{coeffs_recurrence, CoeffVector};
use crate::scalar::Scalar;

/// Exact A^n by repeated squaring; n = 0 gives the identity.
pub fn matrix_power_binary<T: Scalar>(m: &SquareMatrix<T>, n: u64) -> SquareMatrix<T> {
    let mut result = SquareMatrix::<T>::identity(m.dim());
    let mut base = m.clone();
    let mut exp = n;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result.mul(&base);
        }
        exp >>= 1;
        if exp > 0 {
            base = base.mul(&base);
        }
    }
    result
}

/// A^n = sum_j b_j(n) M^j, with the powers M^0..M^{k-1} built once by
/// iterated multiplication.
pub fn matrix_power_via_coeffs<T: Scalar>(
    m: &SquareMatrix<T>,
    coeffs: &CoeffVector<T>,
) -> Result<SquareMatrix<T>> {
    let k = m.dim();
    if coeffs.values.len() != k {
        return Err(Error::Consistency(format!(
            "matrix dimension {k} does not match coefficient count {}",
            coeffs.values.len()
        )));
    }
    let mut acc = SquareMatrix::<T>::zero(k);
    let mut power = SquareMatrix::<T>::identity(k);
    for (j, b) in coeffs.values.iter().enumerate() {
        acc = acc.add(&power.scale(b));
        if j + 1 < k {
            power = power.mul(m);
        }
    }
    Ok(acc)
}

/// The coefficient routes a comparison run can exercise; the binary
/// oracle is always computed and is not itself a route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Recurrence,
    ClosedForm,
    Contour,
    Asymptotic,
}

impl Method {
    pub const ALL: [Method; 4] = [
        Method::Recurrence,
        Method::ClosedForm,
        Method::Contour,
        Method::Asymptotic,
    ];

    pub fn tag(&self) -> &'static str {
        match self {
            Method::Recurrence => "recurrence",
            Method::ClosedForm => "closedform",
            Method::Contour => "contour",
            Method::Asymptotic => "asymptotic",
        }
    }
}

/// Outcome of one successful route.
#[derive(Debug, Clone)]
pub struct RouteResult {
    /// Reconstructed A^n in doubles (the float routes' native output).
    pub matrix: SquareMatrix<f64>,
    /// Exact reconstruction, present only for the exact recurrence route.
    pub exact_matrix: Option<SquareMatrix<BigRational>>,
    /// Max |entry - oracle entry| over the matrix.
    pub max_abs_dev: f64,
    /// Max |entry - oracle| / max(1, |oracle|) over the matrix.
    pub max_rel_dev: f64,
    /// Time spent computing the coefficients.
    pub coeff_ns: u128,
    /// Time spent reconstructing the matrix from them.
    pub reconstruct_ns: u128,
}

/// Side-by-side comparison of the requested routes against the binary
/// oracle. Per-route failures land in their slot without aborting the
/// other routes.
#[derive(Debug, Clone)]
pub struct PowerReport {
    pub n: u64,
    pub dim: usize,
    pub oracle: SquareMatrix<BigRational>,
    pub oracle_ns: u128,
    pub routes: Vec<(Method, Result<RouteResult>)>,
}

/// Runs each requested route at exponent n, reconstructs A^n from its
/// coefficients, and reports deviations from the exact repeated-squaring
/// oracle plus wall-clock timings. Routes are reported in the fixed
/// order recurrence, closed form, contour, asymptotic regardless of the
/// request order.
///
/// Float inputs can be converted losslessly (every double is rational),
/// so the exact oracle applies to both flavors.
pub fn compare_methods(
    m: &SquareMatrix<BigRational>,
    n: u64,
    methods: &[Method],
    cfg: Option<&QuadratureConfig>,
) -> Result<PowerReport> {
    let k = m.dim();
    if n < k as u64 {
        return Err(Error::ExponentRange { n, k });
    }

    let t0 = Instant::now();
    let oracle = matrix_power_binary(m, n);
    let oracle_ns = t0.elapsed().as_nanos();
    let oracle_f64 = oracle.to_f64();

    let p_exact = char_poly(m)?;
    let p_float = p_exact.to_f64_poly();
    let m_float = m.to_f64();
    let eigen = find_roots_default(&p_float);

    let mut routes = Vec::new();
    for method in Method::ALL {
        if !methods.contains(&method) {
            continue;
        }
        let outcome = match method {
            Method::Recurrence => run_exact_recurrence(m, &p_exact, n, &oracle),
            Method::ClosedForm => eigen.clone().and_then(|e| {
                run_float(&m_float, &oracle_f64, || {
                    coeffs_closed_distinct(&e, &p_float, n)
                })
            }),
            Method::Contour => eigen.clone().and_then(|e| {
                let auto;
                let cfg = match cfg {
                    Some(c) => c,
                    None => {
                        auto = QuadratureConfig::auto(e.spectral_radius());
                        &auto
                    }
                };
                run_float(&m_float, &oracle_f64, || coeffs_contour(&p_float, n, cfg, &e))
            }),
            Method::Asymptotic => eigen.clone().and_then(|e| {
                run_float(&m_float, &oracle_f64, || {
                    let est = build_estimate(&e, &p_float, DEFAULT_DOM_TOL)?;
                    eval_estimate(&est, n)
                })
            }),
        };
        routes.push((method, outcome));
    }

    Ok(PowerReport {
        n,
        dim: k,
        oracle,
        oracle_ns,
        routes,
    })
}

fn run_exact_recurrence(
    m: &SquareMatrix<BigRational>,
    p: &crate::polynomial::Polynomial<BigRational>,
    n: u64,
    oracle: &SquareMatrix<BigRational>,
) -> Result<RouteResult> {
    let t0 = Instant::now();
    let coeffs = coeffs_recurrence(p, n)?;
    let coeff_ns = t0.elapsed().as_nanos();
    let t1 = Instant::now();
    let recon = matrix_power_via_coeffs(m, &coeffs)?;
    let reconstruct_ns = t1.elapsed().as_nanos();
    let (max_abs_dev, max_rel_dev) = if recon == *oracle {
        (0.0, 0.0)
    } else {
        deviations(&recon.to_f64(), &oracle.to_f64())
    };
    Ok(RouteResult {
        matrix: recon.to_f64(),
        exact_matrix: Some(recon),
        max_abs_dev,
        max_rel_dev,
        coeff_ns,
        reconstruct_ns,
    })
}

fn run_float(
    m_float: &SquareMatrix<f64>,
    oracle_f64: &SquareMatrix<f64>,
    coeffs_fn: impl FnOnce() -> Result<CoeffVector<f64>>,
) -> Result<RouteResult> {
    let t0 = Instant::now();
    let coeffs = coeffs_fn()?;
    let coeff_ns = t0.elapsed().as_nanos();
    let t1 = Instant::now();
    let recon = matrix_power_via_coeffs(m_float, &coeffs)?;
    let reconstruct_ns = t1.elapsed().as_nanos();
    let (max_abs_dev, max_rel_dev) = deviations(&recon, oracle_f64);
    Ok(RouteResult {
        matrix: recon,
        exact_matrix: None,
        max_abs_dev,
        max_rel_dev,
        coeff_ns,
        reconstruct_ns,
    })
}

/// Entry-wise deviations, relative to max(1, |oracle entry|) so zero
/// entries never divide by zero.
fn deviations(got: &SquareMatrix<f64>, oracle: &SquareMatrix<f64>) -> (f64, f64) {
    let mut max_abs = 0.0f64;
    let mut max_rel = 0.0f64;
    for (g, o) in got.entries().iter().zip(oracle.entries()) {
        let abs = (g - o).abs();
        max_abs = max_abs.max(abs);
        max_rel = max_rel.max(abs / o.abs().max(1.0));
    }
    (max_abs, max_rel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomial::Polynomial;
    use num_traits::Zero;

    fn fib() -> SquareMatrix<BigRational> {
        SquareMatrix::from_i64_rows(&[&[1, 1], &[1, 0]]).unwrap()
    }

    fn rot() -> SquareMatrix<BigRational> {
        SquareMatrix::from_i64_rows(&[&[1, 2], &[-1, -1]]).unwrap()
    }

    fn ints(rows: &[&[i64]]) -> SquareMatrix<BigRational> {
        SquareMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn binary_oracle_basics() {
        assert_eq!(
            matrix_power_binary(&fib(), 0),
            SquareMatrix::identity(2)
        );
        assert_eq!(
            matrix_power_binary(&fib(), 10),
            ints(&[&[89, 55], &[55, 34]])
        );
        assert_eq!(matrix_power_binary(&rot(), 2), ints(&[&[-1, 0], &[0, -1]]));
    }

    #[test]
    fn reconstruction_from_recurrence() {
        let m = fib();
        let p = char_poly(&m).unwrap();
        let coeffs = coeffs_recurrence(&p, 10).unwrap();
        let a10 = matrix_power_via_coeffs(&m, &coeffs).unwrap();
        assert_eq!(a10, ints(&[&[89, 55], &[55, 34]]));

        let r = rot();
        let pr = char_poly(&r).unwrap();
        let a4 = matrix_power_via_coeffs(&r, &coeffs_recurrence(&pr, 4).unwrap()).unwrap();
        assert_eq!(a4, SquareMatrix::identity(2));

        let d = ints(&[&[2, 0], &[0, 3]]);
        let pd = char_poly(&d).unwrap();
        let a5 = matrix_power_via_coeffs(&d, &coeffs_recurrence(&pd, 5).unwrap()).unwrap();
        assert_eq!(a5, ints(&[&[32, 0], &[0, 243]]));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let coeffs = CoeffVector {
            n: 5,
            values: vec![BigRational::zero(); 3],
        };
        assert!(matches!(
            matrix_power_via_coeffs(&fib(), &coeffs),
            Err(Error::Consistency(_))
        ));
    }

    #[test]
    fn reconstruction_at_k_is_cayley_hamilton() {
        let m = ints(&[&[2, -1, 0], &[1, 3, 2], &[0, 1, 1]]);
        let p = char_poly(&m).unwrap();
        let at_k = matrix_power_via_coeffs(&m, &coeffs_recurrence(&p, 3).unwrap()).unwrap();
        assert_eq!(at_k, matrix_power_binary(&m, 3));
    }

    #[test]
    fn semigroup_spot_check() {
        let m = ints(&[&[1, 2, 0], &[0, 1, -1], &[3, 0, 1]]);
        let p = char_poly(&m).unwrap();
        let pow = |n: u64| {
            matrix_power_via_coeffs(&m, &coeffs_recurrence(&p, n).unwrap()).unwrap()
        };
        assert_eq!(pow(7).mul(&pow(5)), pow(12));
    }

    #[test]
    fn exact_route_reports_zero_deviation() {
        let report = compare_methods(&fib(), 30, &[Method::Recurrence], None).unwrap();
        assert_eq!(report.routes.len(), 1);
        let (method, outcome) = &report.routes[0];
        assert_eq!(*method, Method::Recurrence);
        let r = outcome.as_ref().unwrap();
        assert_eq!(r.max_abs_dev, 0.0);
        assert_eq!(r.max_rel_dev, 0.0);
        assert_eq!(r.exact_matrix.as_ref().unwrap(), &report.oracle);
    }

    #[test]
    fn asymptotic_route_deviation_within_one_percent_at_twenty() {
        // Any 3x3 matrix with characteristic polynomial (x-2)^2(x-3):
        // the companion matrix is the canonical pick. The asymptotic
        // error is driven by the discarded (2/3)^n terms.
        let p = Polynomial::<BigRational>::from_i64_low(&[-12, 16, -7]).unwrap();
        let m = SquareMatrix::companion(&p);
        let report = compare_methods(&m, 20, &[Method::Asymptotic], None).unwrap();
        let r = report.routes[0].1.as_ref().unwrap();
        assert!(r.max_rel_dev <= 0.01, "rel dev {}", r.max_rel_dev);
        assert!(r.max_rel_dev > 1e-4, "suspiciously exact: {}", r.max_rel_dev);
    }

    #[test]
    fn contour_route_deviation_within_target() {
        let p = Polynomial::<BigRational>::from_i64_low(&[-12, 16, -7]).unwrap();
        let m = SquareMatrix::companion(&p);
        let cfg = QuadratureConfig::new(4.0, 4096).unwrap();
        let report = compare_methods(&m, 15, &[Method::Contour], Some(&cfg)).unwrap();
        let r = report.routes[0].1.as_ref().unwrap();
        assert!(r.max_rel_dev <= 1e-6, "rel dev {}", r.max_rel_dev);
    }

    #[test]
    fn failing_route_does_not_poison_the_others() {
        // Repeated roots: the closed form must fail, the recurrence and
        // contour must still succeed.
        let p = Polynomial::<BigRational>::from_i64_low(&[-12, 16, -7]).unwrap();
        let m = SquareMatrix::companion(&p);
        let report = compare_methods(
            &m,
            10,
            &[Method::Recurrence, Method::ClosedForm, Method::Contour],
            None,
        )
        .unwrap();
        assert_eq!(report.routes.len(), 3);
        assert!(report.routes[0].1.is_ok());
        assert!(matches!(
            report.routes[1].1,
            Err(Error::UnsupportedStructure(_))
        ));
        assert!(report.routes[2].1.is_ok());
        let contour = report.routes[2].1.as_ref().unwrap();
        assert!(contour.max_rel_dev <= 1e-6);
    }

    #[test]
    fn routes_report_in_canonical_order() {
        let report = compare_methods(
            &fib(),
            10,
            &[Method::Contour, Method::Recurrence],
            None,
        )
        .unwrap();
        assert_eq!(report.routes[0].0, Method::Recurrence);
        assert_eq!(report.routes[1].0, Method::Contour);
    }

    #[test]
    fn exponent_below_dimension_is_rejected() {
        assert!(matches!(
            compare_methods(&fib(), 1, &[Method::Recurrence], None),
            Err(Error::ExponentRange { .. })
        ));
    }
}
