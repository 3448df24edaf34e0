//! Exact-arithmetic toolkit for non-diagonal power-sum forms on generalized
//! Cantor sets.
//!
//! The crate answers one family of questions: for which even `k` does the form
//! `x_1^{a_1} x_2^{a_2} + ... + x_{k-1}^{a_{k-1}} x_k^{a_k}`, with every
//! variable drawn from the generalized Cantor set `C_alpha` and every pair of
//! exponents summing to a fixed `s`, cover the whole interval `[0, k/2]`?
//! It provides three cooperating layers:
//!
//! - [`bounds`]: exact evaluation of the explicit sufficient bounds on `k`,
//! - [`certifier`]: a machine-checkable certificate that replays the
//!   subdivision-inequality pipeline behind those bounds,
//! - [`explorer`]: an independent brute-force oracle that computes exact
//!   images of the forms on finite Cantor approximants.
//!
//! Everything is computed over exact rational scalars ([`Scalar`]); there is
//! no floating point and no rounding anywhere, so certificates re-check
//! bit-exactly.

pub mod bounds;
pub mod cantor;
pub mod certifier;
pub mod error;
pub mod explorer;
pub mod interval;
pub mod scalar;

pub use bounds::{BoundMode, BoundReport, ExponentSpec};
pub use cantor::{BasicInterval, BinaryWord, CantorParams};
pub use certifier::{Certificate, CheckRecord, Conclusion, SplitCheck, SplitVariant};
pub use error::{Error, Result};
pub use explorer::{CoverageReport, Limits};
pub use interval::{Interval, IntervalUnion};
pub use scalar::Scalar;

/// Default exact scalar: arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

/// Fixed-width exact scalar for small workloads. Arithmetic stays exact but
/// panics on overflow instead of growing; prefer [`Rational`] unless profiling
/// says otherwise.
pub type Rational128 = num_rational::Ratio<i128>;
