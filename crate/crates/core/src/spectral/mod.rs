//! Starred eigenbases orthogonal for the inverse measures, and spectral
//! multipliers (heat semigroup, maximal function, Riesz transforms,
//! Littlewood–Paley g-function) acting on finite expansions.

pub mod basis;
pub mod expansion;
pub mod starred;
pub mod suite;

pub use basis::Basis;
pub use expansion::{
    default_t_grid, g_function_norm, heat_semigroup, inner_product, maximal_l2_ratio, maximal_op, riesz, riesz_star,
    Expansion, GReport, Input,
};
pub use starred::{eigencheck_starred, riesz_mode_ratios, starred_eigenvalues, StarredBasis, StarredEntry};
pub use suite::{laguerre_jacobi_suite, SuiteReport};
