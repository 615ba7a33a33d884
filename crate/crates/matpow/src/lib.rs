//! Powers of a square matrix through its characteristic polynomial.
//!
//! For a k-by-k matrix A with monic characteristic polynomial P, every
//! power with n >= k is a linear combination of the first k powers:
//!
//!   A^n = b_0(n) I + b_1(n) A + ... + b_{k-1}(n) A^{k-1}.
//!
//! This crate computes the combination coefficients b_j(n) by four
//! independent routes and cross-validates them against a direct
//! repeated-squaring oracle:
//!
//! * [`recurrence`] — the defining linear recurrence, exact in
//!   arbitrary-precision rationals; the ground truth.
//! * [`closed_form`] — the residue closed form when all eigenvalues are
//!   distinct, plus the exponential generating function G_j(z).
//! * [`contour`] — trapezoid quadrature of a circle contour integral;
//!   needs no eigenvalues at all.
//! * [`asymptotic`] — the leading large-n term from the eigenvalues on
//!   the spectral circle, including repeated and complex ones.
//!
//! [`polynomial`] and [`eigen`] supply the characteristic polynomial
//! machinery and the clustered spectrum; [`power`] reconstructs
//! matrices and compares the routes.
//!
//! Everything is a pure function over immutable values and safe to call
//! concurrently.
//!
//! ```
//! use matpow::{char_poly, coeffs_recurrence, matrix_power_via_coeffs, SquareMatrix};
//! use num_rational::BigRational;
//!
//! let a = SquareMatrix::<BigRational>::from_i64_rows(&[&[1, 1], &[1, 0]]).unwrap();
//! let p = char_poly(&a).unwrap(); // x^2 - x - 1
//! let b = coeffs_recurrence(&p, 10).unwrap(); // Fibonacci pair (34, 55)
//! let a10 = matrix_power_via_coeffs(&a, &b).unwrap();
//! assert_eq!(a10.entry(0, 0), &BigRational::from_integer(89.into()));
//! ```

pub mod asymptotic;
pub mod closed_form;
pub mod contour;
pub mod eigen;
pub mod error;
pub mod matrix;
pub mod polynomial;
pub mod power;
pub mod recurrence;
pub mod scalar;

pub use asymptotic::{
    build_estimate, dominant_growth_class, eval_estimate, AsymTerm, AsymptoticEstimate, PhaseTerm,
};
pub use closed_form::{coeffs_closed_distinct, eval_generating_function, GenValue};
pub use contour::{coeffs_contour, QuadratureConfig};
pub use eigen::{
    find_roots, find_roots_default, EigenRoot, EigenStructure, DEFAULT_CLUSTER_TOL,
    DEFAULT_DOM_TOL,
};
pub use error::{Error, Result};
pub use matrix::SquareMatrix;
pub use polynomial::{char_poly, DensePoly, Polynomial};
pub use power::{
    compare_methods, matrix_power_binary, matrix_power_via_coeffs, Method, PowerReport,
    RouteResult,
};
pub use recurrence::{
    coeffs_recurrence, coeffs_recurrence_scaled, coeffs_sequence, CoeffSequence, CoeffVector,
    ScaledCoeffVector,
};
pub use scalar::Scalar;

pub use num_complex::Complex64;
pub use num_rational::BigRational;
