//! Fractional derivatives and integrals obtained by conjugating the
//! Marchaud derivative and the Weyl integral with `ℰ`.

use super::weighted::Weighted;
use crate::error::{Error, Result};
use crate::quadrature::{marchaud, weyl, Func, Side, SingularConfig, TailHint};
use crate::weights::WeightSpec;

/// `(𝔇_left)^α u(x) = ℰ(x) · D_+^α(ℰ^{-1}u)(x)`.
pub fn frac_deriv_left(spec: &WeightSpec, alpha: f64, u: &Weighted, x: f64, cfg: &SingularConfig) -> Result<f64> {
    frac_deriv_left_truncated(spec, alpha, u, x, 0.0, cfg)
}

/// The left derivative with the Marchaud integral started at `s = ε`.
pub fn frac_deriv_left_truncated(
    spec: &WeightSpec,
    alpha: f64,
    u: &Weighted,
    x: f64,
    eps: f64,
    cfg: &SingularConfig,
) -> Result<f64> {
    if eps < 0.0 {
        return Err(Error::Parameter(format!("truncation must be nonnegative, got {eps}")));
    }
    let e = spec.e(x)?;
    let v = u.left_conjugate(spec)?;
    Ok(e * marchaud(&v, x, alpha, eps, Side::Left, cfg)?)
}

/// `(𝔇_right)^α u(x) = ℰ(x)^{-1} · D_-^α(ℰu)(x)`.
pub fn frac_deriv_right(spec: &WeightSpec, alpha: f64, u: &Weighted, x: f64, cfg: &SingularConfig) -> Result<f64> {
    let e_inv = spec.e_inv(x)?;
    let w = u.right_conjugate(spec)?;
    Ok(e_inv * marchaud(&w, x, alpha, 0.0, Side::Right, cfg)?)
}

/// `(𝔇_left)^{-α} f(x) = ℰ(x) · I_+^α(ℰ^{-1}f)(x)`.
pub fn frac_int_left(spec: &WeightSpec, alpha: f64, f: &Weighted, x: f64, cfg: &SingularConfig) -> Result<f64> {
    let e = spec.e(x)?;
    let v = f.left_conjugate(spec)?;
    Ok(e * weyl(&v, x, alpha, Side::Left, cfg)?)
}

/// `(𝔇_right)^{-α} f(x) = ℰ(x)^{-1} · I_-^α(ℰf)(x)`.
pub fn frac_int_right(spec: &WeightSpec, alpha: f64, f: &Weighted, x: f64, cfg: &SingularConfig) -> Result<f64> {
    let e_inv = spec.e_inv(x)?;
    let w = f.right_conjugate(spec)?;
    Ok(e_inv * weyl(&w, x, alpha, Side::Right, cfg)?)
}

/// Tail of `I_+^α v` implied by the left tail of `v`.
fn weyl_tail(tail: TailHint, alpha: f64) -> TailHint {
    match tail {
        TailHint::Constant { value: 0.0, at } => TailHint::Constant { value: 0.0, at },
        TailHint::Exponential { bound, rate, at } => TailHint::Exponential { bound: bound * rate.powf(-alpha), rate, at },
        // e^{-r d²} <= e^{1/(4r)} e^{-d}
        TailHint::Gaussian { bound, rate, at } => TailHint::Exponential {
            bound: bound * (0.25 / rate).exp(),
            rate: 1.0,
            at,
        },
        _ => TailHint::Unknown,
    }
}

/// `(𝔇_left)^{-α} f` as a lazily evaluated left-conjugated function.
pub fn frac_int_left_func(spec: &WeightSpec, alpha: f64, f: &Weighted, cfg: &SingularConfig) -> Result<Weighted> {
    let v = f.left_conjugate(spec)?;
    let tail = weyl_tail(v.left, alpha);
    let cfg = *cfg;
    let g = Func::new(
        move |y| weyl(&v, y, alpha, Side::Left, &cfg).unwrap_or(f64::NAN),
        tail,
        TailHint::Unknown,
        "weyl integral",
    );
    Ok(Weighted::Left(g))
}

/// `𝔇_left u(x) = ℰ(x) (ℰ^{-1}u)'(x)` by Richardson-extrapolated central differences.
pub fn first_order_left(spec: &WeightSpec, u: &Weighted, x: f64) -> Result<f64> {
    let v = u.left_conjugate(spec)?;
    let h = 1e-2 * x.abs().max(1.0);
    let d = |h: f64| (v.eval(x + h) - v.eval(x - h)) / (2.0 * h);
    let (d1, d2, d3) = (d(h), d(h / 2.0), d(h / 4.0));
    let r1 = (4.0 * d2 - d1) / 3.0;
    let r2 = (4.0 * d3 - d2) / 3.0;
    let val = spec.e(x)? * (16.0 * r2 - r1) / 15.0;
    if val.is_finite() {
        Ok(val)
    } else {
        Err(Error::Numeric("finite differences left the domain".into()))
    }
}
