//! Weighted translation semigroups generated by `∓(u' + a u)`-type operators.

use super::weighted::Weighted;
use crate::error::{Error, Result};
use crate::weights::WeightSpec;

fn check_time(t: f64) -> Result<()> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("semigroup time must be nonnegative, got {t}")))
    }
}

/// `(T_t u)(x) = exp(-∫_{x-t}^x a) u(x - t)`.
pub fn semigroup_left(spec: &WeightSpec, u: &Weighted, t: f64, x: f64) -> Result<f64> {
    check_time(t)?;
    match u {
        Weighted::Left(v) => Ok(spec.e(x)? * v.eval(x - t)),
        _ => Ok(spec.e_ratio(x, x - t)? * u.value(spec, x - t)?),
    }
}

/// `(S_t u)(x) = exp(-∫_x^{x+t} a) u(x + t) = ℰ(x)^{-1} ℰ(x+t) u(x+t)`.
pub fn semigroup_right(spec: &WeightSpec, u: &Weighted, t: f64, x: f64) -> Result<f64> {
    check_time(t)?;
    match u {
        Weighted::Right(w) => Ok(spec.e_inv(x)? * w.eval(x + t)),
        _ => Ok(spec.e_ratio(x + t, x)? * u.value(spec, x + t)?),
    }
}
