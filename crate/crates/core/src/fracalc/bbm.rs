//! Behaviour of `(𝔇_left)^α u(x)` as `α` tends to 0 and to 1.

use super::powers::{first_order_left, frac_deriv_left};
use super::weighted::Weighted;
use crate::error::{Error, Result};
use crate::numerics::neville;
use crate::quadrature::SingularConfig;
use crate::weights::WeightSpec;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct BbmReport {
    pub x: f64,
    pub alphas: Vec<f64>,
    pub values: Vec<f64>,
    /// `𝔇_left u(x)`, by finite differences.
    pub target_one: f64,
    pub limit_one: f64,
    /// `u(x)`.
    pub target_zero: f64,
    pub limit_zero: f64,
    pub dev_one: f64,
    pub dev_zero: f64,
}

pub fn default_alpha_grid() -> Vec<f64> {
    vec![0.02, 0.04, 0.06, 0.08, 0.25, 0.5, 0.75, 0.92, 0.94, 0.96, 0.98]
}

/// Polynomial extrapolation of the four grid points closest to `to`.
fn extrapolate(alphas: &[f64], values: &[f64], to: f64) -> f64 {
    let mut idx: Vec<usize> = (0..alphas.len()).collect();
    idx.sort_by(|&a, &b| (alphas[a] - to).abs().partial_cmp(&(alphas[b] - to).abs()).unwrap());
    idx.truncate(4);
    let xs: Vec<f64> = idx.iter().map(|&i| alphas[i]).collect();
    let ys: Vec<f64> = idx.iter().map(|&i| values[i]).collect();
    neville(&xs, &ys, to)
}

pub fn bbm_sweep(
    spec: &WeightSpec,
    u: &Weighted,
    x: f64,
    alphas: &[f64],
    cfg: &SingularConfig,
) -> Result<BbmReport> {
    if alphas.len() < 4 || alphas.iter().any(|&a| !(a > 0.0 && a < 1.0)) {
        return Err(Error::Parameter("need at least four orders inside (0, 1)".into()));
    }
    let values = alphas
        .iter()
        .map(|&a| frac_deriv_left(spec, a, u, x, cfg))
        .collect::<Result<Vec<_>>>()?;
    let target_one = first_order_left(spec, u, x)?;
    let target_zero = u.value(spec, x)?;
    let limit_one = extrapolate(alphas, &values, 1.0);
    let limit_zero = extrapolate(alphas, &values, 0.0);
    Ok(BbmReport {
        x,
        alphas: alphas.to_vec(),
        values,
        target_one,
        limit_one,
        target_zero,
        limit_zero,
        dev_one: (limit_one - target_one).abs(),
        dev_zero: (limit_zero - target_zero).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::Func;

    #[test]
    fn exponential_limits_are_sharp() {
        // λ^α u interpolates u (α → 0) and λu (α → 1)
        let spec = WeightSpec::zero();
        let u = Weighted::Left(Func::exp(2.0));
        let r = bbm_sweep(&spec, &u, 0.0, &default_alpha_grid(), &SingularConfig::default()).unwrap();
        assert!((r.target_one - 2.0).abs() < 1e-8);
        assert!(r.dev_one < 1e-6 && r.dev_zero < 1e-6, "{r:?}");
    }

    #[test]
    fn rejects_short_or_invalid_grids() {
        let spec = WeightSpec::zero();
        let u = Weighted::Left(Func::exp(1.0));
        let cfg = SingularConfig::default();
        assert!(bbm_sweep(&spec, &u, 0.0, &[0.1, 0.5, 0.9], &cfg).is_err());
        assert!(bbm_sweep(&spec, &u, 0.0, &[0.1, 0.5, 0.9, 1.0], &cfg).is_err());
    }
}
