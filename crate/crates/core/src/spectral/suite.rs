use super::basis::Basis;
use super::expansion::{default_t_grid, g_function_norm, heat_semigroup, maximal_l2_ratio, Expansion};
use crate::error::{Error, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub basis: Basis,
    pub trials: usize,
    pub modes: usize,
    /// Smallest eigenvalue among the modes used; the contraction rate.
    pub lambda_min: f64,
    /// Largest `‖e^{-tL}f‖ / (e^{-tΛ_min}‖f‖)` over trials and times.
    pub contraction_max: f64,
    pub parseval_max_rel: f64,
    pub g_function_max_rel: f64,
    pub maximal_ratio_max: f64,
}

/// Random-expansion checks of the spectral multipliers for any basis.
pub fn laguerre_jacobi_suite(basis: Basis, modes: usize, trials: usize, seed: u64) -> Result<SuiteReport> {
    if modes == 0 {
        return Err(Error::Parameter("need at least one mode".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lambda_min = (0..modes).map(|n| basis.eigenvalue(n)).fold(f64::INFINITY, f64::min);
    let grid = default_t_grid();
    let mut r = SuiteReport {
        basis,
        trials,
        modes,
        lambda_min,
        contraction_max: 0.0,
        parseval_max_rel: 0.0,
        g_function_max_rel: 0.0,
        maximal_ratio_max: 0.0,
    };
    for _ in 0..trials {
        let f = Expansion::random(basis, modes, &mut rng)?;
        let norm = f.norm();
        r.parseval_max_rel = r.parseval_max_rel.max((f.quad_norm()? - norm).abs() / norm);
        for t in [1e-3, 0.1, 0.5, 1.0, 4.0] {
            let ratio = heat_semigroup(&f, t)?.norm() / ((-t * lambda_min).exp() * norm);
            r.contraction_max = r.contraction_max.max(ratio);
        }
        r.g_function_max_rel = r.g_function_max_rel.max(g_function_norm(&f)?.rel_diff);
        r.maximal_ratio_max = r.maximal_ratio_max.max(maximal_l2_ratio(&f, &grid)?);
    }
    Ok(r)
}
