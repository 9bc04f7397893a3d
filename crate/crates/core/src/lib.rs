//! Fractional powers of first order operators `u' + a(x)u` and the inverse
//! Hermite, Laguerre and Jacobi polynomial families.
//!
//! The crate is organised bottom-up:
//!
//! - [`weights`]: coefficient functions `a(x)` and the conjugating weight `ℰ(x)`.
//! - [`exactpoly`]: exact rational polynomials, power series and the
//!   Rodrigues derivative engine.
//! - [`quadrature`]: Gauss rules, adaptive integration and the singular
//!   integrals behind Marchaud derivatives and Weyl integrals.
//! - [`fracalc`]: translation semigroups and fractional powers.
//! - [`extension`]: the extension problem in the upper half plane.
//! - [`spectral`]: starred eigenbases and spectral multipliers.
//! - [`favard`]: the moment functional attached to the monic recurrences.
//! - [`verify`]: the end-to-end acceptance checks.

pub mod error;
pub mod exactpoly;
pub mod extension;
pub mod favard;
pub mod fracalc;
pub mod numerics;
pub mod quadrature;
pub mod rational;
pub mod spectral;
pub mod verify;
pub mod weights;

pub use error::{Error, Result};
pub use rational::Q;
