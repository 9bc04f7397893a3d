//! Small numerical helpers: extrapolation and special functions.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};

pub fn gamma(x: f64) -> f64 {
    statrs::function::gamma::gamma(x)
}

pub fn ln_gamma(x: f64) -> f64 {
    statrs::function::gamma::ln_gamma(x)
}

/// Regularised lower incomplete gamma `P(a, x)`.
pub fn gamma_p(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        statrs::function::gamma::gamma_lr(a, x)
    }
}

/// Regularised upper incomplete gamma `Q(a, x)`.
pub fn gamma_q(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        1.0
    } else {
        statrs::function::gamma::gamma_ur(a, x)
    }
}

/// `c_α = 1 / |Γ(-α)| = α / Γ(1 - α)` for `0 < α < 1`.
pub fn marchaud_constant(alpha: f64) -> f64 {
    alpha / gamma(1.0 - alpha)
}

/// Fits `T(h) = T0 + Σ_k a_k h^{p_k}` through the samples and returns `T0`.
/// Uses as many exponents as the sample count allows.
pub fn richardson(hs: &[f64], values: &[f64], exponents: &[f64]) -> Result<f64> {
    if hs.len() != values.len() || hs.is_empty() {
        return Err(Error::Parameter("extrapolation needs matching, nonempty samples".into()));
    }
    let m = (hs.len() - 1).min(exponents.len());
    let n = m + 1;
    // use the n smallest steps
    let mut idx: Vec<usize> = (0..hs.len()).collect();
    idx.sort_by(|&a, &b| hs[a].partial_cmp(&hs[b]).unwrap());
    idx.truncate(n);
    let scale = idx.iter().map(|&i| hs[i]).fold(0.0f64, f64::max);
    let a = DMatrix::from_fn(n, n, |r, c| {
        if c == 0 {
            1.0
        } else {
            (hs[idx[r]] / scale).powf(exponents[c - 1])
        }
    });
    let b = DVector::from_fn(n, |r, _| values[idx[r]]);
    let sol = a
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::Numeric("singular extrapolation system".into()))?;
    Ok(sol[0])
}

/// Polynomial extrapolation (Neville) of samples `(x_i, y_i)` to `x`.
pub fn neville(xs: &[f64], ys: &[f64], x: f64) -> f64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for k in 1..n {
        for i in 0..n - k {
            p[i] = ((x - xs[i + k]) * p[i] + (xs[i] - x) * p[i + 1]) / (xs[i] - xs[i + k]);
        }
    }
    p[0]
}

/// Observed convergence order from three samples at geometric steps `h, h/r, h/r²`.
pub fn observed_order(values: &[f64], ratio: f64) -> Option<f64> {
    if values.len() < 3 {
        return None;
    }
    let d1 = values[0] - values[1];
    let d2 = values[1] - values[2];
    if d1 == 0.0 || d2 == 0.0 || d1.signum() != d2.signum() {
        return None;
    }
    Some((d1 / d2).ln() / ratio.ln())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn richardson_recovers_limit_of_fractional_expansion() {
        let f = |h: f64| 2.0 + 3.0 * h.powf(0.5) - h.powf(1.5) + 0.25 * h.powf(2.5);
        let hs = [0.2, 0.1, 0.05, 0.025];
        let vals: Vec<f64> = hs.iter().map(|&h| f(h)).collect();
        let t0 = richardson(&hs, &vals, &[0.5, 1.5, 2.5]).unwrap();
        assert!((t0 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn neville_is_exact_on_polynomials() {
        let xs = [0.1, 0.2, 0.3, 0.4];
        let ys: Vec<f64> = xs.iter().map(|x| 1.0 - x + 2.0 * x * x * x).collect();
        assert!((neville(&xs, &ys, 0.0) - 1.0).abs() < 1e-13);
    }

    #[test]
    fn marchaud_constant_at_half() {
        let c = marchaud_constant(0.5);
        assert!((c - 0.5 / std::f64::consts::PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn observed_order_of_quadratic_error() {
        let v: Vec<f64> = [0.1f64, 0.05, 0.025].iter().map(|h| 1.0 + h * h).collect();
        assert!((observed_order(&v, 2.0).unwrap() - 2.0).abs() < 1e-9);
    }
}
