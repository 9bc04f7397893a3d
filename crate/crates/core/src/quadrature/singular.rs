//! Marchaud-type and Weyl-type integrals of a profile `h(s) = v(x ± s)`.
//!
//! Both are split into an endpoint piece `[0, δ]`, handled by a Gauss–Jacobi
//! rule carrying the power singularity, an adaptive middle piece, and a
//! tail that is either exact (constant tails) or truncated against an
//! explicit bound taken from the tail hint.

use super::adaptive::{integrate, AdaptiveConfig};
use super::func::{Func, TailHint};
use super::gauss::{gauss_rule, Measure};
use crate::error::{Error, Result};
use crate::numerics::{gamma, marchaud_constant};

#[derive(Clone, Copy, Debug)]
pub struct SingularConfig {
    pub gj_points: usize,
    pub gj_check_points: usize,
    /// Initial endpoint width; halved until the two Gauss–Jacobi rules agree.
    pub delta: f64,
    pub max_halvings: usize,
    pub agree_rel: f64,
    pub agree_abs: f64,
    /// Tail truncation tolerance, relative to the scale of the profile.
    pub tail_rel: f64,
    pub t_max: f64,
    pub adaptive: AdaptiveConfig,
}

impl Default for SingularConfig {
    fn default() -> Self {
        SingularConfig {
            gj_points: 64,
            gj_check_points: 40,
            delta: 1.0,
            max_halvings: 40,
            agree_rel: 1e-13,
            agree_abs: 1e-15,
            tail_rel: 1e-15,
            t_max: 1e9,
            adaptive: AdaptiveConfig { abs_tol: 1e-15, rel_tol: 1e-13, max_panels: 4000 },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `v(x - s)`
    Left,
    /// `v(x + s)`
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn dir(self) -> f64 {
        match self {
            Side::Left => -1.0,
            Side::Right => 1.0,
        }
    }
}

/// Where to stop integrating and what lies beyond.
struct TailPlan {
    end: f64,
    exact: f64,
}

/// Plans the tail of `∫ h(s) s^p ds` from `start` on.
fn plan_tail(tail: TailHint, p: f64, start: f64, scale: f64, cfg: &SingularConfig) -> Result<TailPlan> {
    let tol = cfg.tail_rel * scale.max(f64::MIN_POSITIVE);
    let divergent = || Error::Precondition("profile tail makes the integral diverge".into());
    match tail {
        TailHint::Constant { value, at } => {
            let end = start.max(at);
            if value == 0.0 {
                Ok(TailPlan { end, exact: 0.0 })
            } else if p < -1.0 {
                Ok(TailPlan { end, exact: value * end.powf(p + 1.0) / (-(p + 1.0)) })
            } else {
                Err(divergent())
            }
        }
        TailHint::Exponential { bound, rate, at } | TailHint::Gaussian { bound, rate, at } => {
            let gaussian = matches!(tail, TailHint::Gaussian { .. });
            let mut t = start.max(at + 1.0).max(1.0);
            loop {
                let d = t - at;
                let decay = if gaussian { 2.0 * rate * d } else { rate };
                let rate_eff = decay - if p > 0.0 { p / t } else { 0.0 };
                if rate_eff > 0.0 {
                    let head = if gaussian { (-rate * d * d).exp() } else { (-rate * d).exp() };
                    let b = bound * t.powf(p) * head / rate_eff;
                    if b <= tol {
                        return Ok(TailPlan { end: t, exact: 0.0 });
                    }
                }
                t *= 1.5;
                if t > cfg.t_max {
                    return Err(Error::Accuracy {
                        what: "tail truncation point exceeds the allowed range".into(),
                        bound: f64::NAN,
                        tol,
                    });
                }
            }
        }
        TailHint::Bounded { bound } => {
            if p >= -1.0 {
                return Err(divergent());
            }
            let k = -(p + 1.0);
            let end = (bound / (k * tol)).powf(1.0 / k).max(start);
            if end > cfg.t_max {
                return Err(Error::Accuracy {
                    what: "bounded tail decays too slowly for the tolerance".into(),
                    bound: bound * cfg.t_max.powf(-k) / k,
                    tol,
                });
            }
            Ok(TailPlan { end, exact: 0.0 })
        }
        TailHint::Unknown => Err(Error::Precondition(
            "no decay information in the integration direction".into(),
        )),
    }
}

/// `∫_a^b f` over geometrically growing panels `a, 2a, 4a, …`.
pub fn integrate_geometric(f: impl Fn(f64) -> f64, a: f64, b: f64, cfg: &AdaptiveConfig) -> Result<f64> {
    if b <= a {
        return Ok(0.0);
    }
    let mut lo = a;
    let mut total = 0.0;
    while lo < b {
        let hi = if lo > 0.0 { (4.0 * lo).min(b) } else { b };
        total += integrate(&f, lo, hi, cfg)?.value;
        lo = hi;
    }
    Ok(total)
}

/// Applies the mapped Gauss–Jacobi rule to `g`, where `g(s)` returns the
/// integrand value and a magnitude used to estimate its rounding noise.
fn endpoint_rule(g: &dyn Fn(f64) -> (f64, f64), b: f64, delta: f64, n: usize) -> Result<(f64, f64)> {
    let rule = gauss_rule(Measure::Jacobi { alpha: 0.0, beta: b }, n)?;
    let half = 0.5 * delta;
    let (mut sum, mut noise) = (0.0, 0.0);
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let (v, m) = g(half * (1.0 + x));
        sum += w * v;
        noise += w * m;
    }
    let scale = half.powf(b + 1.0);
    Ok((scale * sum, scale * noise * 16.0 * f64::EPSILON))
}

fn endpoint_piece(g: &dyn Fn(f64) -> (f64, f64), b: f64, cfg: &SingularConfig) -> Result<(f64, f64)> {
    let mut delta = cfg.delta;
    for _ in 0..=cfg.max_halvings {
        let (i1, noise) = endpoint_rule(g, b, delta, cfg.gj_points)?;
        let (i2, _) = endpoint_rule(g, b, delta, cfg.gj_check_points)?;
        if !i1.is_finite() {
            return Err(Error::Numeric("non-finite value in the endpoint rule".into()));
        }
        if (i1 - i2).abs() <= cfg.agree_rel * i1.abs() + cfg.agree_abs + noise {
            return Ok((i1, delta));
        }
        delta *= 0.5;
    }
    Err(Error::Accuracy {
        what: "endpoint Gauss–Jacobi rules did not agree".into(),
        bound: f64::NAN,
        tol: cfg.agree_rel,
    })
}

/// `∫_ε^∞ (h(0) - h(s)) s^{-1-α} ds` for a profile with the given tail.
pub fn marchaud_profile(
    h: &dyn Fn(f64) -> f64,
    tail: TailHint,
    alpha: f64,
    eps: f64,
    cfg: &SingularConfig,
) -> Result<f64> {
    check_order(alpha)?;
    let h0 = h(0.0);
    let (near, start) = if eps > 0.0 {
        (0.0, eps)
    } else {
        let g = |s: f64| {
            let hs = h(s);
            ((h0 - hs) / s, (h0.abs() + hs.abs()) / s)
        };
        endpoint_piece(&g, -alpha, cfg)?
    };
    let scale = h0.abs().max(tail.sup_beyond(0.0).unwrap_or(0.0)).max(near.abs());
    let plan = plan_tail(tail, -1.0 - alpha, start, scale, cfg)?;
    let mid = integrate_geometric(|s| h(s) * s.powf(-1.0 - alpha), start, plan.end, &cfg.adaptive)?;
    let far = h0 * start.powf(-alpha) / alpha;
    let v = near + far - mid - plan.exact;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numeric("non-finite Marchaud integral (evaluated outside the domain?)".into()))
    }
}

/// `∫_0^∞ h(s) s^{α-1} ds` for a profile with the given tail.
pub fn weyl_profile(h: &dyn Fn(f64) -> f64, tail: TailHint, alpha: f64, cfg: &SingularConfig) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::Parameter(format!("integration order must be positive, got {alpha}")));
    }
    let g = |s: f64| {
        let hs = h(s);
        (hs, hs.abs())
    };
    let (near, start) = endpoint_piece(&g, alpha - 1.0, cfg)?;
    let scale = h(0.0).abs().max(tail.sup_beyond(0.0).unwrap_or(0.0)).max(near.abs());
    let plan = plan_tail(tail, alpha - 1.0, start, scale, cfg)?;
    let mid = integrate_geometric(|s| h(s) * s.powf(alpha - 1.0), start, plan.end, &cfg.adaptive)?;
    let v = near + mid + plan.exact;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Numeric("non-finite Weyl integral (evaluated outside the domain?)".into()))
    }
}

fn check_order(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha < 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("fractional order must lie in (0, 1), got {alpha}")))
    }
}

fn tail_of(v: &Func, side: Side) -> TailHint {
    match side {
        Side::Left => v.left,
        Side::Right => v.right,
    }
}

/// `c_α ∫_ε^∞ (v(x) - v(x ∓ s)) s^{-1-α} ds`; `eps = 0` gives the full
/// Marchaud derivative of `v` at `x`.
pub fn marchaud(v: &Func, x: f64, alpha: f64, eps: f64, side: Side, cfg: &SingularConfig) -> Result<f64> {
    check_order(alpha)?;
    let d = side.dir();
    let h = |s: f64| v.eval(x + d * s);
    Ok(marchaud_constant(alpha) * marchaud_profile(&h, tail_of(v, side).to_profile(x, d), alpha, eps, cfg)?)
}

/// `Γ(α)^{-1} ∫_0^∞ v(x ∓ t) t^{α-1} dt`.
pub fn weyl(v: &Func, x: f64, alpha: f64, side: Side, cfg: &SingularConfig) -> Result<f64> {
    let d = side.dir();
    let h = |s: f64| v.eval(x + d * s);
    Ok(weyl_profile(&h, tail_of(v, side).to_profile(x, d), alpha, cfg)? / gamma(alpha))
}

/// Left Marchaud derivative `(D_+)^α v(x)`.
pub fn marchaud_integral(v: &Func, x: f64, alpha: f64, cfg: &SingularConfig) -> Result<f64> {
    marchaud(v, x, alpha, 0.0, Side::Left, cfg)
}

/// Left Weyl integral `(D_+)^{-α} v(x)`.
pub fn weyl_integral(v: &Func, x: f64, alpha: f64, cfg: &SingularConfig) -> Result<f64> {
    weyl(v, x, alpha, Side::Left, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn exponential_is_an_eigenfunction() {
        let cfg = SingularConfig::default();
        for &(alpha, lambda, x) in &[(0.5, 1.0, 0.0), (0.25, 2.0, -0.3), (0.9, 0.5, 1.2)] {
            let v = Func::exp(lambda);
            let d = marchaud_integral(&v, x, alpha, &cfg).unwrap();
            let want = lambda.powf(alpha) * (lambda * x).exp();
            assert!((d - want).abs() < 1e-10 * want, "α={alpha} λ={lambda}: {d} vs {want}");
            let w = weyl_integral(&v, x, alpha, &cfg).unwrap();
            let want = lambda.powf(-alpha) * (lambda * x).exp();
            assert!((w - want).abs() < 1e-10 * want);
        }
    }

    #[test]
    fn exponential_examples() {
        let cfg = SingularConfig::default();
        let d = marchaud_integral(&Func::exp(2.0), 1.0, 0.3, &cfg).unwrap();
        let want = 2f64.powf(0.3) * 1f64.exp().powi(2);
        assert!((d - want).abs() < 1e-6 * want);
        let w = weyl_integral(&Func::exp(1.0), 0.0, 1.0, &cfg).unwrap();
        assert!((w - 1.0).abs() < 1e-8);
        let w = weyl_integral(&Func::exp(3.0), 0.0, 0.25, &cfg).unwrap();
        assert!((w - 3f64.powf(-0.25)).abs() < 1e-8 * w);
    }

    #[test]
    fn homogeneous_under_dilation() {
        // v(x) → v(λx) multiplies the derivative by λ^α
        let cfg = SingularConfig::default();
        let (alpha, lam, x) = (0.35, 2.5, 0.2);
        let base = marchaud_integral(&Func::gaussian(0.0, 1.0), lam * x, alpha, &cfg).unwrap();
        let dilated = marchaud_integral(&Func::gaussian(0.0, lam * lam), x, alpha, &cfg).unwrap();
        assert!((dilated - lam.powf(alpha) * base).abs() < 1e-6 * base.abs().max(1e-3));
    }

    #[test]
    fn constants_are_annihilated() {
        let cfg = SingularConfig::default();
        let d = marchaud_integral(&Func::constant(3.0), 0.7, 0.4, &cfg).unwrap();
        assert!(d.abs() < 1e-13);
        assert!(weyl_integral(&Func::constant(1.0), 0.0, 0.5, &cfg).is_err());
    }

    #[test]
    fn growth_in_integration_direction_is_rejected() {
        let cfg = SingularConfig::default();
        assert!(matches!(
            marchaud_integral(&Func::exp(-1.0), 0.0, 0.5, &cfg),
            Err(Error::Precondition(_))
        ));
        assert!(marchaud_integral(&Func::exp(1.0), 0.0, 1.5, &cfg).is_err());
    }

    #[test]
    fn right_side_mirrors_left_side() {
        let cfg = SingularConfig::default();
        let v = Func::bump(0.3, 0.8);
        let r = marchaud(&v, 0.1, 0.6, 0.0, Side::Right, &cfg).unwrap();
        let l = marchaud(&v.reflect(), -0.1, 0.6, 0.0, Side::Left, &cfg).unwrap();
        assert!((r - l).abs() < 1e-12);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn marchaud_is_linear(a in -2.0f64..2.0, b in -2.0f64..2.0, alpha in 0.1f64..0.9, x in -1.0f64..1.0) {
            let cfg = SingularConfig::default();
            let f = Func::bump(0.0, 1.0);
            let g = Func::exp(1.5);
            let fg = {
                let (f2, g2) = (f.clone(), g.clone());
                Func::new(move |y| a * f2.eval(y) + b * g2.eval(y),
                    TailHint::Exponential { bound: b.abs(), rate: 1.5, at: -1.0 }, TailHint::Unknown, "combo")
            };
            let lhs = marchaud_integral(&fg, x, alpha, &cfg).unwrap();
            let rhs = a * marchaud_integral(&f, x, alpha, &cfg).unwrap() + b * marchaud_integral(&g, x, alpha, &cfg).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-10 * (1.0 + rhs.abs()));
        }
    }
}
