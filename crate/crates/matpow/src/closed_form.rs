//! The distinct-eigenvalue closed form for b_j(n) and the exponential
//! generating function G_j(z).
//!
//! Both come from residues of s^{k-j-1} p_j(s)/P(s): when all
//! eigenvalues are simple the residue at lambda_l is
//! p_j(lambda_l)/P'(lambda_l) times a power of lambda_l. Repeated
//! eigenvalues are deliberately out of scope here; exact values for
//! those cases come from the recurrence route instead.

use num_complex::Complex64;

use crate::eigen::{pair_roles, EigenStructure, PairRole};
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::recurrence::CoeffVector;

/// G_0(z)..G_{k-1}(z) at one complex point z.
#[derive(Debug, Clone, PartialEq)]
pub struct GenValue {
    pub z: Complex64,
    pub values: Vec<Complex64>,
}

/// Per-eigenvalue residue weights p_j(lambda)/P'(lambda) for every j.
/// Zero eigenvalues are skipped outright: 0 being a root forces
/// a_0 = 0, so p_j(0) = 0 and the term never contributes (this also
/// sidesteps 0^0 at n = j+1).
struct ResidueTable {
    lambdas: Vec<Complex64>,
    weights: Vec<Vec<Complex64>>, // [root][j]
}

fn residue_table(eig: &EigenStructure, p: &Polynomial<f64>) -> Result<ResidueTable> {
    let k = p.degree();
    if eig.source_degree() != k {
        return Err(Error::Consistency(format!(
            "eigenvalue structure has degree {}, polynomial has degree {k}",
            eig.source_degree()
        )));
    }
    if !eig.all_simple() {
        return Err(Error::UnsupportedStructure(
            "the closed form requires distinct eigenvalues; use the recurrence \
             or asymptotic routes for repeated roots"
                .into(),
        ));
    }
    let dp = p.derivative_m(1);
    let mut lambdas = Vec::new();
    let mut weights = Vec::new();
    for root in eig.roots() {
        let lam = root.value;
        if lam == Complex64::new(0.0, 0.0) {
            continue;
        }
        let d = dp.eval_complex(lam);
        if d.norm() < 1e-12 {
            return Err(Error::IllConditioned(format!(
                "|P'({lam})| = {:.3e} is below 1e-12",
                d.norm()
            )));
        }
        let mut per_j = Vec::with_capacity(k);
        let mut prefix = Complex64::new(0.0, 0.0);
        let mut power = Complex64::new(1.0, 0.0);
        for j in 0..k {
            prefix += p.coeff(j) * power;
            power *= lam;
            per_j.push(prefix / d);
        }
        lambdas.push(lam);
        weights.push(per_j);
    }
    Ok(ResidueTable { lambdas, weights })
}

/// b_j(n) = -sum_l lambda_l^{n-j-1} p_j(lambda_l)/P'(lambda_l), summed
/// in conjugate pairs so real inputs cancel symmetrically. The residual
/// imaginary part must stay below 1e-8 of the result magnitude.
pub fn coeffs_closed_distinct(
    eig: &EigenStructure,
    p: &Polynomial<f64>,
    n: u64,
) -> Result<CoeffVector<f64>> {
    let k = p.degree();
    if n < k as u64 {
        return Err(Error::ExponentRange { n, k });
    }
    let table = residue_table(eig, p)?;
    let roles = pair_roles(&table.lambdas);
    let mut totals = vec![Complex64::new(0.0, 0.0); k];
    for j in 0..k {
        let exponent = n - j as u64 - 1;
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, &lam) in table.lambdas.iter().enumerate() {
            let term = -complex_powu(lam, exponent) * table.weights[idx][j];
            match roles[idx] {
                PairRole::PairLead => acc += Complex64::new(2.0 * term.re, 0.0),
                PairRole::PairSkip => {}
                PairRole::Real | PairRole::Lone => acc += term,
            }
        }
        totals[j] = acc;
    }
    realize(totals, n, 1e-8)
}

/// G_j(z) = -sum_l lambda_l^{k-j-1} (p_j(lambda_l)/P'(lambda_l)) e^{lambda_l z}.
pub fn eval_generating_function(
    eig: &EigenStructure,
    p: &Polynomial<f64>,
    z: Complex64,
) -> Result<GenValue> {
    let k = p.degree();
    let table = residue_table(eig, p)?;
    let mut values = vec![Complex64::new(0.0, 0.0); k];
    for j in 0..k {
        let mut acc = Complex64::new(0.0, 0.0);
        for (idx, &lam) in table.lambdas.iter().enumerate() {
            acc -= complex_powu(lam, (k - j - 1) as u64) * table.weights[idx][j] * (lam * z).exp();
        }
        values[j] = acc;
    }
    Ok(GenValue { z, values })
}

/// Collapses complex totals to their real parts after verifying the
/// imaginary residue is negligible against the result magnitude.
fn realize(totals: Vec<Complex64>, n: u64, rel_tol: f64) -> Result<CoeffVector<f64>> {
    let scale = totals.iter().map(|t| t.norm()).fold(0.0, f64::max);
    for (j, t) in totals.iter().enumerate() {
        if t.im.abs() > rel_tol * scale {
            return Err(Error::Accuracy(format!(
                "imaginary residual {:.3e} of b_{j} exceeds {rel_tol:.0e} of the result scale {scale:.3e}",
                t.im.abs()
            )));
        }
    }
    Ok(CoeffVector {
        n,
        values: totals.into_iter().map(|t| t.re).collect(),
    })
}

/// Binary exponentiation; more accurate than exp/log for the moderate
/// exponents this crate deals in.
pub(crate) fn complex_powu(base: Complex64, mut exp: u64) -> Complex64 {
    let mut result = Complex64::new(1.0, 0.0);
    let mut acc = base;
    while exp > 0 {
        if exp & 1 == 1 {
            result *= acc;
        }
        acc *= acc;
        exp >>= 1;
    }
    result
}
