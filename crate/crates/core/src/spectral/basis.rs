use crate::error::{Error, Result};
use crate::numerics::ln_gamma;
use crate::quadrature::Measure;
use crate::rational::{parse_q, to_f64};
use serde::Serialize;
use std::f64::consts::PI;

/// Starred eigenbases: a classical polynomial times its classical weight,
/// orthogonal for the reciprocal ("inverse") measure.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Basis {
    /// `H*_n = e^{-x²} H_n`, inverse measure `π^{1/2} e^{x²} dx`.
    InvGauss,
    /// `L^{α,*}_n = x^α e^{-x} L^α_n`, inverse measure `x^{-α} e^x dx`.
    InvLaguerre { alpha: f64 },
    /// `P^{(α,β),*}_n = (1-x)^α (1+x)^β P^{(α,β)}_n`, inverse measure `(1-x)^{-α}(1+x)^{-β} dx`.
    InvJacobi { alpha: f64, beta: f64 },
}

impl Basis {
    /// Parses `invgauss`, `invlaguerre:<α>` or `invjacobi:<α>,<β>`.
    pub fn parse(s: &str) -> Result<Self> {
        let num = |t: &str| parse_q(t).map(|q| to_f64(&q));
        let b = match s.split_once(':') {
            None if s == "invgauss" => Basis::InvGauss,
            Some(("invlaguerre", a)) => Basis::InvLaguerre { alpha: num(a)? },
            Some(("invjacobi", ab)) => {
                let (a, b) = ab
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("invjacobi needs α,β: {s:?}")))?;
                Basis::InvJacobi { alpha: num(a)?, beta: num(b)? }
            }
            _ => return Err(Error::Parse(format!("unknown basis {s:?}"))),
        };
        b.validate()?;
        Ok(b)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Basis::InvGauss => Ok(()),
            Basis::InvLaguerre { alpha } if alpha > -1.0 => Ok(()),
            Basis::InvJacobi { alpha, beta } if alpha > -1.0 && beta > -1.0 => Ok(()),
            _ => Err(Error::Parameter(format!("basis parameters out of range: {self:?}"))),
        }
    }

    /// `Λ_n > 0` with `L φ_n = -Λ_n φ_n` for the inverse operator `L`.
    pub fn eigenvalue(&self, n: usize) -> f64 {
        let n = n as f64;
        match *self {
            Basis::InvGauss => 2.0 * n + 2.0,
            Basis::InvLaguerre { .. } => n + 1.0,
            Basis::InvJacobi { alpha, beta } => n * (n + alpha + beta + 1.0) + alpha + beta,
        }
    }

    pub fn measure(&self) -> Measure {
        match *self {
            Basis::InvGauss => Measure::Hermite,
            Basis::InvLaguerre { alpha } => Measure::Laguerre { alpha },
            Basis::InvJacobi { alpha, beta } => Measure::Jacobi { alpha, beta },
        }
    }

    /// Constant `κ` with `⟨w F, w G⟩_inverse = κ ∫ F G dμ_classical`.
    pub fn reduction_constant(&self) -> f64 {
        match self {
            Basis::InvGauss => PI.sqrt(),
            _ => 1.0,
        }
    }

    /// Classical weight `w(x)`.
    pub fn weight(&self, x: f64) -> f64 {
        match *self {
            Basis::InvGauss => (-x * x).exp(),
            Basis::InvLaguerre { alpha } => x.powf(alpha) * (-x).exp(),
            Basis::InvJacobi { alpha, beta } => (1.0 - x).powf(alpha) * (1.0 + x).powf(beta),
        }
    }

    /// Density of the inverse measure.
    pub fn inverse_density(&self, x: f64) -> f64 {
        self.reduction_constant() / self.weight(x)
    }

    pub fn domain(&self) -> (f64, f64) {
        match self {
            Basis::InvGauss => (f64::NEG_INFINITY, f64::INFINITY),
            Basis::InvLaguerre { .. } => (0.0, f64::INFINITY),
            Basis::InvJacobi { .. } => (-1.0, 1.0),
        }
    }

    /// Classical polynomials `P_0(x), …, P_n(x)`.
    pub fn polys(&self, n: usize, x: f64) -> Vec<f64> {
        let mut p = Vec::with_capacity(n + 1);
        p.push(1.0);
        for k in 0..n {
            let kf = k as f64;
            let prev = if k == 0 { 0.0 } else { p[k - 1] };
            let next = match *self {
                Basis::InvGauss => 2.0 * x * p[k] - 2.0 * kf * prev,
                Basis::InvLaguerre { alpha } => ((2.0 * kf + 1.0 + alpha - x) * p[k] - (kf + alpha) * prev) / (kf + 1.0),
                Basis::InvJacobi { alpha: a, beta: b } => {
                    if k == 0 {
                        0.5 * ((a + b + 2.0) * x + a - b)
                    } else {
                        let s = 2.0 * kf + a + b;
                        let c1 = (s + 1.0) * ((s + 2.0) * s * x + a * a - b * b);
                        let c2 = 2.0 * (kf + a) * (kf + b) * (s + 2.0);
                        (c1 * p[k] - c2 * prev) / (2.0 * (kf + 1.0) * (kf + a + b + 1.0) * s)
                    }
                }
            };
            p.push(next);
        }
        p
    }

    /// `‖φ_n‖²` in the inverse measure, equal to the classical norm times `κ`.
    pub fn norm_sq(&self, n: usize) -> f64 {
        let nf = n as f64;
        match *self {
            Basis::InvGauss => (1..=n).fold(PI, |acc, k| acc * 2.0 * k as f64),
            Basis::InvLaguerre { alpha } => {
                (1..=n).fold(self.measure().mass(), |acc, k| acc * (k as f64 + alpha) / k as f64)
            }
            Basis::InvJacobi { alpha: a, beta: b } => {
                if n == 0 {
                    return self.measure().mass();
                }
                let log = (a + b + 1.0) * 2f64.ln() - (2.0 * nf + a + b + 1.0).ln()
                    + ln_gamma(nf + a + 1.0)
                    + ln_gamma(nf + b + 1.0)
                    - ln_gamma(nf + a + b + 1.0)
                    - ln_gamma(nf + 1.0);
                log.exp()
            }
        }
    }
}
