//! Fundamental theorem of fractional calculus: the truncated derivative of
//! the fractional integral tends to the function as the truncation vanishes.

use super::powers::{frac_deriv_left_truncated, frac_int_left_func};
use super::weighted::Weighted;
use crate::error::{Error, Result};
use crate::numerics::richardson;
use crate::quadrature::{AdaptiveConfig, SingularConfig};
use crate::weights::WeightSpec;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct FtcReport {
    pub alpha: f64,
    pub x: f64,
    pub eps: Vec<f64>,
    pub truncated: Vec<f64>,
    pub extrapolated: f64,
    pub target: f64,
    pub abs_error: f64,
    /// Whether the raw truncated values approach the extrapolated limit
    /// monotonically as `ε` decreases.
    pub monotone: bool,
}

pub const DEFAULT_EPS: [f64; 4] = [0.2, 0.1, 0.05, 0.025];

/// Evaluates `(𝔇_left)^α_ε (𝔇_left)^{-α} f (x)` on the `ε` sequence and
/// extrapolates with the error exponents `k - α`.
pub fn ftc_check(
    spec: &WeightSpec,
    alpha: f64,
    f: &Weighted,
    x: f64,
    eps: &[f64],
    cfg: &SingularConfig,
) -> Result<FtcReport> {
    if eps.len() < 2 || eps.iter().any(|&e| e <= 0.0) {
        return Err(Error::Parameter("need at least two positive truncation values".into()));
    }
    let g = frac_int_left_func(spec, alpha, f, cfg)?;
    // the inner integrals carry ~1e-13 noise; ask the outer one for less
    let outer = SingularConfig {
        adaptive: AdaptiveConfig { abs_tol: 1e-12, rel_tol: 1e-10, max_panels: 4000 },
        tail_rel: 1e-12,
        ..*cfg
    };
    let truncated = eps
        .iter()
        .map(|&e| frac_deriv_left_truncated(spec, alpha, &g, x, e, &outer))
        .collect::<Result<Vec<_>>>()?;
    let exponents: Vec<f64> = (1..eps.len()).map(|k| k as f64 - alpha).collect();
    let extrapolated = richardson(eps, &truncated, &exponents)?;
    let target = f.value(spec, x)?;
    let mut order: Vec<usize> = (0..eps.len()).collect();
    order.sort_by(|&a, &b| eps[b].partial_cmp(&eps[a]).unwrap());
    let gaps: Vec<f64> = order.iter().map(|&i| (truncated[i] - extrapolated).abs()).collect();
    let monotone = gaps.windows(2).all(|w| w[1] <= w[0]);
    Ok(FtcReport {
        alpha,
        x,
        eps: eps.to_vec(),
        truncated,
        extrapolated,
        target,
        abs_error: (extrapolated - target).abs(),
        monotone,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::Func;

    #[test]
    fn reconstructs_a_gaussian() {
        let spec = WeightSpec::ou();
        let f = Weighted::Left(Func::gaussian(0.0, 1.0));
        let r = ftc_check(&spec, 0.4, &f, 0.3, &DEFAULT_EPS, &SingularConfig::default()).unwrap();
        assert!(r.abs_error < 1e-4, "{r:?}");
        // the raw truncated values approach the target, the extrapolation does better
        let raw = (r.truncated.last().unwrap() - r.target).abs();
        assert!(r.abs_error < raw);
    }

    #[test]
    fn needs_two_truncations() {
        let spec = WeightSpec::zero();
        let f = Weighted::Left(Func::exp(1.0));
        assert!(ftc_check(&spec, 0.5, &f, 0.0, &[0.1], &SingularConfig::default()).is_err());
    }
}
