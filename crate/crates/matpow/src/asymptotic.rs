//! First-order asymptotics of b_j(n) from the dominant eigenvalue set.
//!
//! Each eigenvalue lambda of multiplicity m on the spectral circle
//! contributes
//!
//!   -lambda^{n-m-j} p_j(lambda)/P^{(m)}(lambda) * m! * binom(n-k, m-1)
//!
//! to b_j(n), and contributions of several dominant eigenvalues add.
//! The binomial is evaluated exactly as an integer product rather than
//! through its n^{m-1}/(m-1)! limit, which is noticeably more accurate
//! at moderate n.

use num_complex::Complex64;

use crate::closed_form::complex_powu;
use crate::eigen::{pair_roles, EigenStructure, PairRole};
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::recurrence::CoeffVector;

const MAX_LN: f64 = 709.78;

/// One dominant-eigenvalue contribution to one coefficient index j:
/// evaluates to factor * lambda^n * binom(n-k, mult-1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymTerm {
    pub lambda: Complex64,
    pub mult: usize,
    /// -p_j(lambda) * mult! / (lambda^{mult+j} * P^{(mult)}(lambda))
    pub factor: Complex64,
}

/// The leading-order model of all k coefficient sequences at once.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticEstimate {
    degree: usize,
    rho: f64,
    max_mult: usize,
    terms: Vec<Vec<AsymTerm>>,
    vanished: Vec<usize>,
}

/// Conjugate pairs merged into the real amplitude-phase form
/// modulus^n * (alpha cos(n theta) + beta sin(n theta)) * binom(n-k, mult-1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseTerm {
    pub modulus: f64,
    pub theta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub mult: usize,
}

impl PhaseTerm {
    /// Evaluates the displayed form directly; mainly for cross-checks.
    pub fn value(&self, n: u64, degree: usize) -> f64 {
        let angle = self.theta * n as f64;
        self.modulus.powi(n as i32)
            * (self.alpha * angle.cos() + self.beta * angle.sin())
            * binomial(n - degree as u64, self.mult - 1)
    }
}

/// Builds the estimate from every eigenvalue on the spectral circle
/// (within `dom_tol` relative). Terms whose p_j(lambda) vanishes are
/// dropped; a j left with no terms at all is recorded in
/// `vanished_js`, and its estimate is identically zero rather than a
/// deeper-order term.
pub fn build_estimate(
    eig: &EigenStructure,
    p: &Polynomial<f64>,
    dom_tol: f64,
) -> Result<AsymptoticEstimate> {
    let k = p.degree();
    if eig.source_degree() != k {
        return Err(Error::Consistency(format!(
            "eigenvalue structure has degree {}, polynomial has degree {k}",
            eig.source_degree()
        )));
    }
    let dominant = eig.dominant_set(dom_tol);
    let rho = eig.spectral_radius();
    let max_mult = dominant.iter().map(|r| r.multiplicity).max().unwrap_or(0);

    let mut terms: Vec<Vec<AsymTerm>> = vec![Vec::new(); k];
    for root in &dominant {
        let lam = root.value;
        let m = root.multiplicity;
        let deriv = p.derivative_m(m);
        let d = deriv.eval_complex(lam);
        if d.norm() < 1e-12 {
            return Err(Error::DegenerateDerivative {
                order: m,
                magnitude: d.norm(),
                lambda: lam,
            });
        }
        let m_factorial: f64 = (1..=m).map(|i| i as f64).product();
        let mut prefix = Complex64::new(0.0, 0.0);
        let mut power = Complex64::new(1.0, 0.0);
        let mut prefix_scale = 1.0f64;
        for (j, slot) in terms.iter_mut().enumerate() {
            prefix += p.coeff(j) * power;
            prefix_scale += p.coeff(j).abs() * power.norm();
            power *= lam;
            if prefix.norm() <= 1e-12 * prefix_scale {
                continue; // the leading term vanishes for this j
            }
            if lam == Complex64::new(0.0, 0.0) {
                // A dominant zero eigenvalue forces a_0 = 0 and hence
                // p_j(0) = 0, so reaching here means the structure does
                // not belong to this polynomial.
                return Err(Error::Consistency(
                    "zero dominant eigenvalue with a nonzero prefix value".into(),
                ));
            }
            let factor = -prefix * m_factorial / (complex_powu(lam, (m + j) as u64) * d);
            slot.push(AsymTerm {
                lambda: lam,
                mult: m,
                factor,
            });
        }
    }
    let vanished = terms
        .iter()
        .enumerate()
        .filter(|(_, t)| t.is_empty())
        .map(|(j, _)| j)
        .collect();
    Ok(AsymptoticEstimate {
        degree: k,
        rho,
        max_mult,
        terms,
        vanished,
    })
}

impl AsymptoticEstimate {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms_for(&self, j: usize) -> &[AsymTerm] {
        &self.terms[j]
    }

    /// Indices j whose leading term vanished entirely (the estimate for
    /// them is identically zero).
    pub fn vanished_js(&self) -> &[usize] {
        &self.vanished
    }

    /// Opt-in truncation to the strongest growth only: keeps the terms
    /// of maximal multiplicity (conjugate partners included) and drops
    /// the rest.
    pub fn truncated_to_max_mult(&self) -> Self {
        let terms: Vec<Vec<AsymTerm>> = self
            .terms
            .iter()
            .map(|ts| {
                ts.iter()
                    .copied()
                    .filter(|t| t.mult == self.max_mult)
                    .collect()
            })
            .collect();
        let vanished = terms
            .iter()
            .enumerate()
            .filter(|(_, t)| t.is_empty())
            .map(|(j, _)| j)
            .collect();
        Self {
            degree: self.degree,
            rho: self.rho,
            max_mult: self.max_mult,
            terms,
            vanished,
        }
    }

    /// Amplitude-phase presentation of the terms for one j, with
    /// conjugate pairs combined so each entry is real-valued.
    pub fn phase_terms(&self, j: usize) -> Vec<PhaseTerm> {
        let lambdas: Vec<Complex64> = self.terms[j].iter().map(|t| t.lambda).collect();
        let roles = pair_roles(&lambdas);
        let mut out = Vec::new();
        for (t, role) in self.terms[j].iter().zip(&roles) {
            let (alpha, beta) = match role {
                PairRole::Real => (t.factor.re, 0.0),
                PairRole::PairLead => (2.0 * t.factor.re, -2.0 * t.factor.im),
                PairRole::PairSkip => continue,
                // Without an exact mirror, present the real projection.
                PairRole::Lone => (t.factor.re, -t.factor.im),
            };
            out.push(PhaseTerm {
                modulus: t.lambda.norm(),
                theta: t.lambda.arg(),
                alpha,
                beta,
                mult: t.mult,
            });
        }
        out
    }
}

/// Evaluates the estimate at one exponent, pairing conjugate terms so
/// the result is real up to rounding. Magnitudes are recombined in log
/// space when lambda^n alone would overflow.
pub fn eval_estimate(est: &AsymptoticEstimate, n: u64) -> Result<CoeffVector<f64>> {
    let k = est.degree;
    if n < k as u64 {
        return Err(Error::ExponentRange { n, k });
    }
    let mut totals = vec![Complex64::new(0.0, 0.0); k];
    for j in 0..k {
        let lambdas: Vec<Complex64> = est.terms[j].iter().map(|t| t.lambda).collect();
        let roles = pair_roles(&lambdas);
        let mut acc = Complex64::new(0.0, 0.0);
        for (t, role) in est.terms[j].iter().zip(&roles) {
            if *role == PairRole::PairSkip {
                continue;
            }
            let term = term_value(t, n, k)?;
            match role {
                PairRole::PairLead => acc += Complex64::new(2.0 * term.re, 0.0),
                _ => acc += term,
            }
        }
        totals[j] = acc;
    }

    let scale = totals.iter().map(|t| t.norm()).fold(0.0, f64::max);
    for (j, t) in totals.iter().enumerate() {
        if t.im.abs() > 1e-8 * scale {
            return Err(Error::Accuracy(format!(
                "imaginary residual {:.3e} of the estimate for b_{j} exceeds 1e-8 \
                 of the result scale {scale:.3e}",
                t.im.abs()
            )));
        }
    }
    Ok(CoeffVector {
        n,
        values: totals.into_iter().map(|t| t.re).collect(),
    })
}

/// The growth exponent pair: b_j(n) grows like rho^n * n^{max_mult - 1}.
pub fn dominant_growth_class(est: &AsymptoticEstimate) -> (f64, usize) {
    (est.rho, est.max_mult)
}

fn term_value(t: &AsymTerm, n: u64, k: usize) -> Result<Complex64> {
    let binom = binomial(n - k as u64, t.mult - 1);
    if binom == 0.0 || t.factor == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    if t.lambda == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let log_lam = t.lambda.norm().ln();
    let total_log = n as f64 * log_lam + t.factor.norm().ln() + binom.ln();
    if total_log > MAX_LN {
        return Err(Error::RepresentableRange {
            log10_mag: total_log / std::f64::consts::LN_10,
        });
    }
    if n as f64 * log_lam <= 700.0 && n <= u32::MAX as u64 {
        Ok(t.factor * complex_powu(t.lambda, n) * binom)
    } else {
        // Log-space recombination; the phase n*theta is reduced in f64,
        // which is the accuracy limit at such exponents anyway.
        let phase = Complex64::from_polar(
            1.0,
            (n as f64 * t.lambda.arg()) % std::f64::consts::TAU,
        );
        let unit = t.factor / t.factor.norm();
        Ok(unit * phase * total_log.exp())
    }
}

/// binom(top, r) as an exact integer product (f64 fallback only when
/// the intermediate product overflows u128, far past any representable
/// result).
fn binomial(top: u64, r: usize) -> f64 {
    if r == 0 {
        return 1.0;
    }
    if (top as u128) < r as u128 {
        return 0.0;
    }
    let mut acc: u128 = 1;
    for i in 1..=r as u128 {
        let numer = top as u128 - r as u128 + i;
        match acc.checked_mul(numer) {
            Some(v) => acc = v / i,
            None => {
                let mut f = 1.0f64;
                for i in 1..=r as u64 {
                    f *= (top - r as u64 + i) as f64 / i as f64;
                }
                return f;
            }
        }
    }
    acc as f64
}
