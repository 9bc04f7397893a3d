//! Quadrature: Gauss rules, adaptive integration and singular integrals.

pub mod adaptive;
pub mod func;
pub mod gauss;
pub mod singular;

pub use adaptive::{integrate, integrate_to_infinity, AdaptiveConfig, Integral};
pub use func::{bump_profile, Func, TailHint};
pub use gauss::{gauss_rule, jacobi_endpoint, GaussRule, Measure};
pub use singular::{marchaud, marchaud_integral, weyl, weyl_integral, Side, SingularConfig};
