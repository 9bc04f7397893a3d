//! Hermite functions of arbitrary real degree `ν < 1`, built from the
//! fractional powers of the Ornstein–Uhlenbeck first order operator applied
//! to the constant function.

use crate::error::{Error, Result};
use crate::numerics::{gamma, marchaud_constant};
use crate::quadrature::singular::{marchaud_profile, weyl_profile};
use crate::quadrature::{SingularConfig, TailHint};

/// Tail of `s ↦ e^{-2xs - s²} = e^{x²} e^{-(s+x)²}`.
fn profile_tail(x: f64) -> TailHint {
    if x >= 0.0 {
        TailHint::Gaussian { bound: 1.0, rate: 1.0, at: 0.0 }
    } else {
        TailHint::Gaussian { bound: (x * x).exp(), rate: 1.0, at: -x }
    }
}

/// Classical Hermite polynomial `H_n(x)` by its recurrence.
pub fn hermite_poly(n: usize, x: f64) -> f64 {
    let (mut prev, mut cur) = (0.0, 1.0);
    for k in 0..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `H_ν(x)`: `Γ(-ν)^{-1} ∫_0^∞ (e^{-2xt-t²} - 1) t^{-ν-1} dt` for `0 < ν < 1`,
/// `Γ(-ν)^{-1} ∫_0^∞ e^{-2xt-t²} t^{-ν-1} dt` for `ν < 0`, and the
/// polynomial for nonnegative integers.
pub fn hermite_function(nu: f64, x: f64, cfg: &SingularConfig) -> Result<f64> {
    if nu >= 0.0 && nu.fract() == 0.0 {
        return Ok(hermite_poly(nu as usize, x));
    }
    let h = |s: f64| (-2.0 * x * s - s * s).exp();
    if nu < 0.0 {
        let a = -nu;
        Ok(weyl_profile(&h, profile_tail(x), a, cfg)? / gamma(a))
    } else if nu < 1.0 {
        Ok(marchaud_constant(nu) * marchaud_profile(&h, profile_tail(x), nu, 0.0, cfg)?)
    } else {
        Err(Error::Parameter(format!("Hermite functions of non-integer degree {nu} >= 1 are not supported")))
    }
}

/// `y'' - 2x y' + 2ν y` for `y = H_ν`, by extrapolated central differences.
pub fn hermite_ode_residual(nu: f64, x: f64, h: f64, cfg: &SingularConfig) -> Result<f64> {
    let y = |t: f64| hermite_function(nu, t, cfg);
    let (ym2, ym1, y0, yp1, yp2) = (y(x - 2.0 * h)?, y(x - h)?, y(x)?, y(x + h)?, y(x + 2.0 * h)?);
    // fourth order stencils
    let d1 = (ym2 - 8.0 * ym1 + 8.0 * yp1 - yp2) / (12.0 * h);
    let d2 = (-ym2 + 16.0 * ym1 - 30.0 * y0 + 16.0 * yp1 - yp2) / (12.0 * h * h);
    Ok(d2 - 2.0 * x * d1 + 2.0 * nu * y0)
}

/// `H_ν(0) = 2^ν √π / Γ((1 - ν)/2)`.
pub fn hermite_function_at_zero(nu: f64) -> f64 {
    2f64.powf(nu) * std::f64::consts::PI.sqrt() / gamma((1.0 - nu) / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_origin() {
        let cfg = SingularConfig::default();
        for &nu in &[-2.5, -1.0 / 3.0, 0.5, 0.8] {
            let v = hermite_function(nu, 0.0, &cfg).unwrap();
            let want = hermite_function_at_zero(nu);
            assert!((v - want).abs() < 1e-11 * want.abs(), "ν = {nu}: {v} vs {want}");
        }
        // ν = -α gives Γ(α/2) / (2Γ(α))
        let a = 0.4;
        let v = hermite_function(-a, 0.0, &cfg).unwrap();
        assert!((v - gamma(a / 2.0) / (2.0 * gamma(a))).abs() < 1e-11);
    }

    #[test]
    fn satisfies_hermite_equation() {
        let cfg = SingularConfig::default();
        for &nu in &[-0.5, 0.3, 0.7] {
            for &x in &[-1.0, 0.0, 0.6] {
                let r = hermite_ode_residual(nu, x, 1e-2, &cfg).unwrap();
                assert!(r.abs() < 1e-5, "ν = {nu}, x = {x}: residual {r}");
            }
        }
    }

    #[test]
    fn integer_degrees_and_unsupported() {
        let cfg = SingularConfig::default();
        assert_eq!(hermite_function(3.0, 0.5, &cfg).unwrap(), hermite_poly(3, 0.5));
        assert!((hermite_poly(3, 0.5) - (8.0 * 0.125 - 12.0 * 0.5)).abs() < 1e-15);
        assert!(hermite_function(1.5, 0.0, &cfg).is_err());
    }
}
