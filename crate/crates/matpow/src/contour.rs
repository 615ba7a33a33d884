//! The eigenvalue-free quadrature route: b_j(n) as a trapezoid sum of
//! the circle contour integral
//!
//!   b_j(n) = -(R^{n-j} / 2 pi) * integral_0^{2pi}
//!            exp(i t (n-j)) p_j(R e^{it}) / P(R e^{it}) dt,  R > rho.
//!
//! The integrand is periodic and analytic, so the equispaced trapezoid
//! rule converges geometrically in the node count.
//!
//! Choosing the radius is a genuine trade-off this module has to own:
//! the amplification factor R^{n-j} grows with R, while the distance
//! from the circle to the poles of 1/P shrinks as R approaches the
//! spectral radius, slowing convergence and inflating the integrand.
//! The default R = 1.25 rho + 0.5 sits between the two failure modes
//! and can be overridden per call.

use num_complex::Complex64;

use crate::eigen::EigenStructure;
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;
use crate::recurrence::CoeffVector;

/// Natural log of the largest finite double; magnitudes past this are
/// reported as range errors instead of infinities.
const MAX_LN: f64 = 709.78;

/// Circle radius and node count for the trapezoid rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    radius: f64,
    nodes: usize,
}

impl QuadratureConfig {
    pub const DEFAULT_NODES: usize = 2048;

    /// Validates that the radius is positive and finite and the node
    /// count is an even number >= 16. Whether the radius clears the
    /// spectral radius is checked at call time, against the actual
    /// spectrum.
    pub fn new(radius: f64, nodes: usize) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidInput(
                "quadrature radius must be positive and finite".into(),
            ));
        }
        if nodes < 16 || nodes % 2 != 0 {
            return Err(Error::InvalidInput(format!(
                "node count must be an even number >= 16, got {nodes}"
            )));
        }
        Ok(Self { radius, nodes })
    }

    /// Default configuration for a spectrum of the given radius.
    pub fn auto(rho: f64) -> Self {
        Self {
            radius: 1.25 * rho + 0.5,
            nodes: Self::DEFAULT_NODES,
        }
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn with_radius(self, radius: f64) -> Result<Self> {
        Self::new(radius, self.nodes)
    }

    pub fn with_nodes(self, nodes: usize) -> Result<Self> {
        Self::new(self.radius, nodes)
    }
}

/// Trapezoid approximation of the contour integral for every j at once.
///
/// The eigenvalue structure is consulted only to validate the radius;
/// the quadrature itself never touches the eigenvalues. Nodes are
/// accumulated in fixed index order, so the output is bit-stable for a
/// given configuration. The R^{n-j} amplification is applied in log
/// space and recombined at the end; results whose magnitude cannot be
/// represented in a double are a range error.
pub fn coeffs_contour(
    p: &Polynomial<f64>,
    n: u64,
    cfg: &QuadratureConfig,
    eig: &EigenStructure,
) -> Result<CoeffVector<f64>> {
    let k = p.degree();
    if n < k as u64 {
        return Err(Error::ExponentRange { n, k });
    }
    let rho = eig.spectral_radius();
    if !(cfg.radius > rho) {
        return Err(Error::ContourViolation {
            radius: cfg.radius,
            rho,
        });
    }

    let nodes = cfg.nodes as u64;
    let mut acc = vec![Complex64::new(0.0, 0.0); k];
    for m in 0..nodes {
        let t = std::f64::consts::TAU * m as f64 / nodes as f64;
        let s = Complex64::from_polar(cfg.radius, t);
        let ps = p.eval_complex(s);
        if ps.norm() < 1e-12 {
            return Err(Error::NearPole {
                node: m as usize,
                min_abs: ps.norm(),
            });
        }
        let mut prefix = Complex64::new(0.0, 0.0);
        let mut power = Complex64::new(1.0, 0.0);
        for (j, slot) in acc.iter_mut().enumerate() {
            prefix += p.coeff(j) * power;
            power *= s;
            // exp(i t (n-j)) via exact integer phase reduction: the node
            // phases are N-th roots of unity, so reduce m*(n-j) mod N.
            let q = (n - j as u64) % nodes;
            let steps = (m * q) % nodes;
            let angle = std::f64::consts::TAU * steps as f64 / nodes as f64;
            *slot += Complex64::from_polar(1.0, angle) * prefix / ps;
        }
    }

    let means: Vec<Complex64> = acc.into_iter().map(|a| a / nodes as f64).collect();

    // Range check first: once R^{n-j} pushes the result past the double
    // range the means are meaningless anyway.
    let ln_radius = cfg.radius.ln();
    for (j, mean) in means.iter().enumerate() {
        if mean.norm() == 0.0 {
            continue;
        }
        let log_mag = (n - j as u64) as f64 * ln_radius + mean.norm().ln();
        if log_mag > MAX_LN {
            return Err(Error::RepresentableRange {
                log10_mag: log_mag / std::f64::consts::LN_10,
            });
        }
    }

    // The exact integral is real; the discrete imaginary residue decays
    // geometrically with the node count and must be negligible.
    let scale = means.iter().map(|m| m.norm()).fold(0.0, f64::max);
    for (j, mean) in means.iter().enumerate() {
        if mean.im.abs() > 1e-6 * scale {
            return Err(Error::Accuracy(format!(
                "imaginary quadrature residual {:.3e} for b_{j} exceeds 1e-6 of the \
                 integrand scale {scale:.3e}; increase the node count",
                mean.im.abs()
            )));
        }
    }

    let mut values = Vec::with_capacity(k);
    for (j, mean) in means.iter().enumerate() {
        let re = mean.re;
        if re == 0.0 {
            values.push(0.0);
            continue;
        }
        let log_mag = (n - j as u64) as f64 * ln_radius + re.abs().ln();
        values.push(-re.signum() * log_mag.exp());
    }
    Ok(CoeffVector { n, values })
}
