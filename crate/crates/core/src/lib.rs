//! Exact computation of automorphism-weighted moments of Frobenius traces of
//! elliptic curves over small finite fields, restricted to curves whose group
//! of rational points contains a given finite abelian group, together with the
//! class-number and Eichler-Selberg trace-formula expression that predicts
//! them.
//!
//! The two sides are computed by disjoint stacks:
//!
//! * [`finitefield`] and [`curves`] enumerate Weierstrass equations over `F_q`
//!   and weight each by orbit-stabilizer;
//! * [`numtheory`], [`quadforms`], [`hecke_congruence`], [`classsum`] and
//!   [`traceformula`] evaluate Hurwitz class-number sums and the four terms of
//!   the trace formula for `Gamma(N, M)`.
//!
//! [`oracles`] holds integer q-expansions of level-one cusp forms used as
//! independent ground truth for the trace formula, and [`verify`] bundles the
//! identity checks exposed through the command-line tool.
//!
//! Arithmetic on the class-number side is generic over a [`Scalar`]; the
//! crate-level aliases pin the concrete types used by default.

pub mod chebyshev;
pub mod classsum;
pub mod curves;
mod error;
pub mod finitefield;
pub mod hecke_congruence;
pub mod numtheory;
pub mod oracles;
pub mod quadforms;
mod scalar;
pub mod traceformula;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::{rat_string, Scalar};

/// Arbitrary-precision rational; carries every weighted count and class number.
pub type ExactRat = num_rational::BigRational;

/// Fixed-width rational, adequate for small weights and levels.
pub type Rat128 = num_rational::Ratio<i128>;

/// Floating-point scalar, only meaningful for approximate cross-checks.
pub type Approx = f64;
