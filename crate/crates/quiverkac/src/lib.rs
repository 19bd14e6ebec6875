//! Exact combinatorics of quiver varieties.
//!
//! Everything in this crate is computed in exact arithmetic: big integers,
//! big rationals, polynomials and rational functions in a single variable
//! `q`, and box-truncated multivariate power series over the rational
//! function field. The main pipelines are
//!
//! - [`betti`]: Poincaré polynomials of Nakajima quiver varieties as a ratio
//!   of two multipartition generating functions,
//! - [`hua`]: Kac A-polynomials extracted from the same generating function
//!   by a plethystic-logarithm inversion,
//! - [`weyl`]: Weyl group orbit sums, Kac-Moody root multiplicities and
//!   highest-weight character multiplicities,
//! - [`ffcount`]: brute-force and Fourier-identity point counts of moment-map
//!   level sets over prime fields, used as ground truth for the above.
//!
//! The [`cli`] module exposes all of this behind the `quiverkac` binary.

pub mod betti;
pub mod cli;
pub mod exactalg;
pub mod ffcount;
pub mod hua;
pub mod partitions;
pub mod quiver;
pub mod report;
pub mod weyl;
