//! Error type shared by every module in the crate.

/// Errors produced by the matpow library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Input shape is wrong (non-square matrix, empty coefficient list).
    #[error("dimension error: {0}")]
    Dimension(String),

    /// Input values are malformed (non-finite entries, bad tolerances).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The exponent is below the polynomial degree; the coefficient
    /// representation only exists for n >= k.
    #[error("exponent {n} is below the polynomial degree {k}; coefficients are defined for n >= k")]
    ExponentRange { n: u64, k: usize },

    /// An index argument falls outside its documented range.
    #[error("index {index} out of range {min}..={max}")]
    IndexRange { index: i64, min: i64, max: i64 },

    /// The root iteration did not reach the residual target.
    #[error("root finding did not converge after {iterations} iterations (worst residual {residual:.3e})")]
    Convergence { iterations: u32, residual: f64 },

    /// The requested route does not apply to this eigenvalue structure
    /// (e.g. the distinct-eigenvalue closed form on a repeated root).
    #[error("unsupported structure: {0}")]
    UnsupportedStructure(String),

    /// A denominator is too close to zero for a trustworthy result.
    #[error("ill-conditioned: {0}")]
    IllConditioned(String),

    /// The quadrature circle does not enclose the spectrum strictly.
    #[error("contour radius {radius} does not exceed the spectral radius {rho}")]
    ContourViolation { radius: f64, rho: f64 },

    /// A quadrature node fell too close to a pole of the integrand.
    #[error("quadrature node {node} is too close to a pole (|P| = {min_abs:.3e}); use a larger radius")]
    NearPole { node: usize, min_abs: f64 },

    /// The result magnitude exceeds what a double can represent.
    #[error("result magnitude ~10^{log10_mag:.0} exceeds the representable floating-point range")]
    RepresentableRange { log10_mag: f64 },

    /// A floating-point result failed its internal accuracy check.
    #[error("accuracy check failed: {0}")]
    Accuracy(String),

    /// A derivative that must be nonzero for the stated multiplicity is
    /// numerically zero, which signals a clustering fault upstream.
    #[error("degenerate derivative: |P^({order})| = {magnitude:.3e} at eigenvalue {lambda}")]
    DegenerateDerivative {
        order: usize,
        magnitude: f64,
        lambda: num_complex::Complex64,
    },

    /// Two values that must describe the same object disagree.
    #[error("consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
