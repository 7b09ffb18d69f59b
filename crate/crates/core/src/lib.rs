//! Exact computer algebra for trivial Atiyah algebroids.
//!
//! Everything here works over the rationals with polynomial coefficient
//! data on a single coordinate chart, so every identity the crate checks
//! (Jacobi, Leibniz, closedness, morphism conditions) reduces to deciding
//! whether some polynomial is identically zero.
//!
//! Layout:
//!
//! - [`exactcalc`]: multivariate polynomials, vector fields, differential
//!   forms, the de Rham differential and polynomial diffeomorphisms.
//! - [`linalg`]: exact Gaussian elimination over `Q`.
//! - [`liealg`]: finite-dimensional Lie algebras given by structure
//!   constants, Killing form, reductive splitting, simple ideals.
//! - [`algebroid`]: the trivial algebroid `TU x g`, its bracket, pointwise
//!   ideal predicates and the linear Poisson structure on the dual.
//! - [`connection`]: splittings, curvature and the model algebroid
//!   `Z (+) A~` with its 2-form twisted bracket.
//! - [`morphism`]: divergences, the center and semisimple isomorphisms and
//!   the full twisted morphism together with its residual.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod algebroid;
pub mod connection;
pub mod exactcalc;
pub mod liealg;
pub mod linalg;
pub mod morphism;

pub use num_bigint::BigInt;
pub use num_rational::BigRational as Rational;

/// Builds the rational `num / den`.
///
/// Panics when `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}
