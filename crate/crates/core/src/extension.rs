//! Solution of the extension problem
//! `-𝔇_left U + ((1-2α)/y) U_y + U_yy = 0` in the upper half plane with
//! boundary data `u`, written as a Gamma-kernel average of translates:
//!
//! `U(x, y) = ℰ(x) Γ(α)^{-1} ∫_0^∞ e^{-r} r^{α-1} v(x - y²/(4r)) dr`, `v = ℰ^{-1}u`.

use crate::error::{Error, Result};
use crate::fracalc::Weighted;
use crate::numerics::{gamma, gamma_p, ln_gamma, observed_order, richardson};
use crate::quadrature::{integrate, AdaptiveConfig, Func, TailHint};
use crate::weights::WeightSpec;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Mutex;

/// `c_α = 4^{α-1/2} Γ(α) / Γ(1-α)`.
pub fn extension_constant(alpha: f64) -> f64 {
    4f64.powf(alpha - 0.5) * gamma(alpha) / gamma(1.0 - alpha)
}

#[derive(Clone, Copy, Debug)]
pub struct ExtensionConfig {
    pub adaptive: AdaptiveConfig,
    /// Absolute tolerance for the discarded `r → 0` tail, relative to `sup |v|`.
    pub tail_rel: f64,
    /// Upper cut of the `r` integral.
    pub r_max: f64,
}

impl Default for ExtensionConfig {
    fn default() -> Self {
        ExtensionConfig {
            adaptive: AdaptiveConfig { abs_tol: 1e-15, rel_tol: 1e-13, max_panels: 4000 },
            tail_rel: 1e-15,
            r_max: 80.0,
        }
    }
}

pub struct ExtensionField {
    spec: WeightSpec,
    alpha: f64,
    v: Func,
    cfg: ExtensionConfig,
    cache: Mutex<HashMap<(u64, u64), f64>>,
}

/// `Γ(b) / Γ(α)`, exact in the two cases used by the field.
fn gamma_ratio(b: f64, alpha: f64) -> f64 {
    if b == alpha {
        1.0
    } else if b == alpha + 1.0 {
        alpha
    } else {
        (ln_gamma(b) - ln_gamma(alpha)).exp()
    }
}

impl ExtensionField {
    pub fn new(spec: &WeightSpec, alpha: f64, u: &Weighted) -> Result<Self> {
        Self::with_config(spec, alpha, u, ExtensionConfig::default())
    }

    pub fn with_config(spec: &WeightSpec, alpha: f64, u: &Weighted, cfg: ExtensionConfig) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Parameter(format!("extension order must lie in (0, 1), got {alpha}")));
        }
        Ok(ExtensionField {
            spec: spec.clone(),
            alpha,
            v: u.left_conjugate(spec)?,
            cfg,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn spec(&self) -> &WeightSpec {
        &self.spec
    }

    /// `Γ(α)^{-1} ∫_0^∞ e^{-r} r^{b-1} v(x - y²/(4r)) dr`.
    fn gamma_average(&self, b: f64, x: f64, y: f64) -> Result<f64> {
        let y2 = y * y / 4.0;
        let arg = |r: f64| x - y2 / r;
        let tail = self.v.left;
        let scale = self.v.eval(x).abs().max(tail.sup_beyond(0.0).unwrap_or(0.0)).max(f64::MIN_POSITIVE);
        let tol = self.cfg.tail_rel * scale;
        // r below r_lo probes the left tail of v
        let (r_lo, exact) = match tail {
            TailHint::Constant { value, at } => {
                if x <= at {
                    return Ok(value * gamma_ratio(b, self.alpha));
                }
                let r_c = y2 / (x - at);
                (r_c, value * gamma_ratio(b, self.alpha) * gamma_p(b, r_c))
            }
            TailHint::Exponential { .. } | TailHint::Gaussian { .. } => {
                let at = tail.at().unwrap();
                let mut d = 0.0f64;
                loop {
                    let gap = x - at + d;
                    if gap > 0.0 {
                        let r = y2 / gap;
                        let bound = tail.sup_beyond(d).unwrap() * r.powf(b) / (b * gamma(self.alpha));
                        if bound <= tol || r < 1e-300 {
                            break (r, 0.0);
                        }
                    }
                    d = if d == 0.0 { 1.0 } else { 2.0 * d };
                    if d > 1e12 {
                        return Err(Error::Accuracy {
                            what: "extension tail cut-off not found".into(),
                            bound: f64::NAN,
                            tol,
                        });
                    }
                }
            }
            TailHint::Bounded { bound } => {
                let r = (tol * b * gamma(self.alpha) / bound).powf(1.0 / b);
                (r, 0.0)
            }
            TailHint::Unknown => {
                return Err(Error::Precondition("extension needs decay information for ℰ^{-1}u on the left".into()))
            }
        };
        let r_hi = self.cfg.r_max.max(r_lo * 2.0);
        let body = integrate(
            |s| {
                let r = s.exp();
                (b * s - r).exp() * self.v.eval(arg(r))
            },
            r_lo.ln(),
            r_hi.ln(),
            &self.cfg.adaptive,
        )?
        .value
            / gamma(self.alpha);
        let v = exact + body;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Numeric(format!("non-finite extension value at ({x}, {y})")))
        }
    }

    fn check_y(y: f64) -> Result<()> {
        if y > 0.0 && y.is_finite() {
            Ok(())
        } else {
            Err(Error::Parameter(format!("interior evaluation needs y > 0, got {y}")))
        }
    }

    /// `ℰ(x)^{-1} U(x, y)`, cached per grid point.
    pub fn conj_eval(&self, x: f64, y: f64) -> Result<f64> {
        Self::check_y(y)?;
        let key = (x.to_bits(), y.to_bits());
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return Ok(*v);
        }
        let v = self.gamma_average(self.alpha, x, y)?;
        self.cache.lock().unwrap().entry(key).or_insert(v);
        Ok(v)
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<f64> {
        Ok(self.spec.e(x)? * self.conj_eval(x, y)?)
    }

    /// `U_y = (2/y) ℰ(x) [α Ū - Γ(α)^{-1} ∫ e^{-r} r^α v dr]`, by parts in `r`.
    pub fn u_y(&self, x: f64, y: f64) -> Result<f64> {
        Self::check_y(y)?;
        let ubar = self.conj_eval(x, y)?;
        let upper = self.gamma_average(self.alpha + 1.0, x, y)?;
        Ok(self.spec.e(x)? * 2.0 / y * (self.alpha * ubar - upper))
    }

    pub fn boundary(&self, x: f64) -> Result<f64> {
        Ok(self.spec.e(x)? * self.v.eval(x))
    }
}

pub fn extension_eval(spec: &WeightSpec, alpha: f64, u: &Weighted, x: f64, y: f64) -> Result<f64> {
    ExtensionField::new(spec, alpha, u)?.eval(x, y)
}

/// `-𝔇_left U + ((1-2α)/y) U_y + U_yy` by finite differences: central in
/// `y`, second order backward in `x`.
pub fn pde_residual(field: &ExtensionField, x: f64, y: f64, h: f64) -> Result<f64> {
    if !(y > 2.0 * h && h > 0.0) {
        return Err(Error::Parameter(format!("need y > 2h > 0, got y = {y}, h = {h}")));
    }
    let e = field.spec.e(x)?;
    let c = |x: f64, y: f64| field.conj_eval(x, y);
    let (um, u0, up) = (c(x, y - h)?, c(x, y)?, c(x, y + h)?);
    let uy = e * (up - um) / (2.0 * h);
    let uyy = e * (up - 2.0 * u0 + um) / (h * h);
    let dx = e * (3.0 * u0 - 4.0 * c(x - h, y)? + c(x - 2.0 * h, y)?) / (2.0 * h);
    Ok(-dx + (1.0 - 2.0 * field.alpha) / y * uy + uyy)
}

#[derive(Clone, Debug, Serialize)]
pub struct TraceReport {
    pub ys: Vec<f64>,
    pub values: Vec<f64>,
    pub estimate: f64,
    pub method: String,
    pub observed_order: Option<f64>,
    pub warnings: Vec<String>,
}

fn check_sequence(ys: &[f64]) -> Result<()> {
    if ys.len() < 2 || ys.iter().any(|&y| y <= 0.0) || ys.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Parameter("need a decreasing sequence of at least two positive y".into()));
    }
    Ok(())
}

/// Extrapolated `-c_α lim_{y→0} y^{1-2α} U_y(x, y)`.
pub fn neumann_trace(field: &ExtensionField, x: f64, ys: &[f64]) -> Result<TraceReport> {
    check_sequence(ys)?;
    let a = field.alpha;
    let c = extension_constant(a);
    let values = ys
        .iter()
        .map(|&y| Ok(-c * y.powf(1.0 - 2.0 * a) * field.u_y(x, y)?))
        .collect::<Result<Vec<_>>>()?;
    let assumed = 2.0 - 2.0 * a;
    let mut warnings = Vec::new();
    let n = values.len();
    let observed = if n >= 3 {
        let r = ys[n - 3] / ys[n - 2];
        let geometric = ((ys[n - 2] / ys[n - 1]) - r).abs() < 1e-12 * r;
        if geometric {
            observed_order(&values[n - 3..], r)
        } else {
            None
        }
    } else {
        None
    };
    let misfit = observed.map(|p| (p - assumed).abs() > 0.1 * assumed);
    let (estimate, method) = match (observed, misfit) {
        (Some(p), Some(true)) => {
            warnings.push(format!("observed order {p:.3} differs from {assumed:.3}; using geometric extrapolation"));
            let r = ys[n - 2] / ys[n - 1];
            let est = values[n - 1] - (values[n - 2] - values[n - 1]) / (r.powf(p) - 1.0);
            (est, "geometric".to_string())
        }
        _ => {
            if observed.is_none() && n >= 3 {
                warnings.push("observed order unavailable; extrapolation may diverge".into());
            }
            let exps = [assumed, 2.0, 4.0 - 2.0 * a, 4.0];
            (richardson(ys, &values, &exps)?, "richardson".to_string())
        }
    };
    Ok(TraceReport { ys: ys.to_vec(), values, estimate, method, observed_order: observed, warnings })
}

/// Extrapolated `lim_{y→0} U(x, y)`, using the corrections `y^{2α}` and `y²`.
pub fn boundary_limit(field: &ExtensionField, x: f64, ys: &[f64]) -> Result<f64> {
    check_sequence(ys)?;
    let vals = ys.iter().map(|&y| field.eval(x, y)).collect::<Result<Vec<_>>>()?;
    richardson(ys, &vals, &[2.0 * field.alpha, 2.0, 2.0 * field.alpha + 2.0, 4.0])
}

/// `K_ν(z) = ∫_0^∞ e^{-z cosh t} cosh(ν t) dt`.
pub fn bessel_k(nu: f64, z: f64) -> Result<f64> {
    if z <= 0.0 {
        return Err(Error::Parameter("Bessel K needs z > 0".into()));
    }
    // beyond t_max the integrand is below e^{-700} relative to e^{-z}
    let t_max = (1.0 + 700.0 / z).acosh();
    let cfg = AdaptiveConfig { abs_tol: 0.0, rel_tol: 1e-14, max_panels: 4000 };
    // factor e^{-z} out for range
    let v = integrate(|t| (-z * (t.cosh() - 1.0)).exp() * (nu * t).cosh(), 0.0, t_max, &cfg)?.value;
    Ok(v * (-z).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_conjugate_is_harmonic() {
        let spec = WeightSpec::ou();
        let f = ExtensionField::new(&spec, 0.3, &Weighted::Left(Func::constant(1.0))).unwrap();
        for &(x, y) in &[(0.0, 0.5), (0.7, 2.0)] {
            assert_eq!(f.eval(x, y).unwrap(), spec.e(x).unwrap());
            assert_eq!(pde_residual(&f, x, y, 0.1).unwrap(), 0.0);
        }
        let t = neumann_trace(&f, 0.0, &[0.2, 0.1, 0.05]).unwrap();
        assert!(t.estimate.abs() < 1e-14);
    }

    #[test]
    fn bessel_closed_form_for_exponentials() {
        let (alpha, lambda, x, y) = (0.5, 1.0, 0.0, 1.0);
        let f = ExtensionField::new(&WeightSpec::zero(), alpha, &Weighted::Left(Func::exp(lambda))).unwrap();
        let z = y * lambda.sqrt();
        let want = (lambda * x).exp() * 2f64.powf(1.0 - alpha) / gamma(alpha) * z.powf(alpha) * bessel_k(alpha, z).unwrap();
        let got = f.eval(x, y).unwrap();
        assert!((got - want).abs() < 1e-12);
        assert!((got - (-1.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn half_integer_bessel() {
        let z = 0.7;
        let k = bessel_k(0.5, z).unwrap();
        let want = (std::f64::consts::PI / (2.0 * z)).sqrt() * (-z).exp();
        assert!((k - want).abs() < 1e-14 * want);
    }

    #[test]
    fn derivative_in_y_matches_differences() {
        let f = ExtensionField::new(&WeightSpec::hermite(), 0.35, &Weighted::Left(Func::bump(0.0, 1.5))).unwrap();
        let (x, y, h) = (0.4, 0.6, 1e-4);
        let fd = (f.eval(x, y + h).unwrap() - f.eval(x, y - h).unwrap()) / (2.0 * h);
        assert!((fd - f.u_y(x, y).unwrap()).abs() < 1e-7);
    }

    #[test]
    fn rejects_boundary_points() {
        let f = ExtensionField::new(&WeightSpec::zero(), 0.5, &Weighted::Left(Func::exp(1.0))).unwrap();
        assert!(f.eval(0.0, 0.0).is_err());
        assert!(pde_residual(&f, 0.0, 0.1, 0.1).is_err());
        assert!(ExtensionField::new(&WeightSpec::zero(), 1.0, &Weighted::Left(Func::exp(1.0))).is_err());
    }

    #[test]
    fn half_order_closed_form() {
        let spec = WeightSpec::zero();
        for lam in [0.5, 1.0, 2.0] {
            let f = ExtensionField::new(&spec, 0.5, &Weighted::Left(Func::exp(lam))).unwrap();
            for &(x, y) in &[(0.0, 1.0), (-0.4, 0.3), (0.8, 2.5)] {
                let want = (lam * x - y * f64::sqrt(lam)).exp();
                assert!((f.eval(x, y).unwrap() - want).abs() < 1e-10 * want, "λ={lam} ({x},{y})");
            }
        }
    }

    #[test]
    fn averaging_bound_without_potential() {
        let spec = WeightSpec::zero();
        let u = Func::bump(0.3, 0.8).scale(-2.0);
        let sup = 2.0 * crate::quadrature::bump_profile(0.0);
        for alpha in [0.2, 0.5, 0.85] {
            let f = ExtensionField::new(&spec, alpha, &Weighted::Left(u.clone())).unwrap();
            for x in [-0.5, 0.3, 1.0] {
                for y in [0.01, 0.1, 0.5, 1.0, 3.0] {
                    assert!(f.eval(x, y).unwrap().abs() <= sup + 1e-10);
                }
            }
        }
    }

    #[test]
    fn parabolic_scaling() {
        // U[u(μ·)](x, y) = U[u](μx, √μ y) when a ≡ 0
        let spec = WeightSpec::zero();
        let (c, mu, alpha) = (0.4, 2.5, 0.35);
        let base = ExtensionField::new(&spec, alpha, &Weighted::Left(Func::gaussian(c, 1.0))).unwrap();
        let scaled = ExtensionField::new(&spec, alpha, &Weighted::Left(Func::gaussian(c / mu, mu * mu))).unwrap();
        for &(x, y) in &[(0.0, 0.5), (0.3, 0.2), (-0.2, 1.1)] {
            let a = scaled.eval(x, y).unwrap();
            let b = base.eval(mu * x, mu.sqrt() * y).unwrap();
            assert!((a - b).abs() < 1e-10 * (1.0 + b.abs()), "({x},{y}): {a} vs {b}");
        }
    }
}
