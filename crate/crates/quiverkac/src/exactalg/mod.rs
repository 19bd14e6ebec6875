//! Exact arithmetic: arbitrary-precision polynomials and rational functions
//! in the indeterminate `q`, and box-truncated multivariate power series over
//! the rational-function field.
//!
//! There is no floating point anywhere and no Laurent type: factors like
//! `1 - q^{-j}` are cleared into a numerator/denominator pair the moment a
//! term is constructed, so gcd normalization lives in one place.

mod intpoly;
mod ratfun;
mod series;

pub use intpoly::IntPoly;
pub use ratfun::RationalFunction;
pub use series::MSeries;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum AlgError {
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("series bounds differ")]
    BoundMismatch,
    #[error("series has zero constant term, not invertible")]
    ZeroConstantTerm,
    #[error("series logarithm requires constant term 1")]
    LogConstantTermNotOne,
    #[error("denominator does not divide numerator: not a polynomial")]
    NonPolynomial,
    #[error("quotient is a polynomial with non-integer coefficients")]
    NonIntegral,
    #[error("evaluation point is a pole")]
    PoleAtPoint,
}
