//! Coefficient functions `a(x)`, their antiderivatives `A(x) = ∫_{x₀}^x a`,
//! and the conjugating weight `ℰ(x) = e^{-A(x)}`.

use crate::error::{Error, Result};
use crate::quadrature::{integrate, AdaptiveConfig};
use crate::rational::{parse_q, to_f64};
use std::fmt;
use std::sync::Arc;

#[derive(Clone)]
enum Kind {
    /// `a(x) = 2x`
    Ou,
    /// `a(x) = x`
    Hermite,
    /// `a(x) = α/x - 1` on (0, ∞)
    Laguerre { alpha: f64 },
    /// `a(x) = -α/(1-x) + β/(1+x)` on (-1, 1)
    Jacobi { alpha: f64, beta: f64 },
    Zero,
    Custom { a: Arc<dyn Fn(f64) -> f64 + Send + Sync>, lo: f64, hi: f64, name: String },
}

#[derive(Clone)]
pub struct WeightSpec {
    kind: Kind,
    x0: f64,
    /// When set, this weight describes `x ↦ a(-x)` on the mirrored domain.
    reflected: bool,
}

impl fmt::Debug for WeightSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeightSpec({}, x0 = {}{})", self.name(), self.x0, if self.reflected { ", reflected" } else { "" })
    }
}

impl WeightSpec {
    pub fn ou() -> Self {
        Self::with_kind(Kind::Ou, 0.0)
    }

    pub fn hermite() -> Self {
        Self::with_kind(Kind::Hermite, 0.0)
    }

    pub fn laguerre(alpha: f64) -> Self {
        Self::with_kind(Kind::Laguerre { alpha }, 1.0)
    }

    pub fn jacobi(alpha: f64, beta: f64) -> Self {
        Self::with_kind(Kind::Jacobi { alpha, beta }, 0.0)
    }

    pub fn zero() -> Self {
        Self::with_kind(Kind::Zero, 0.0)
    }

    /// A continuous user coefficient on `(lo, hi)`; `A` is computed by
    /// adaptive quadrature from `x0`.
    pub fn custom(
        name: impl Into<String>,
        a: impl Fn(f64) -> f64 + Send + Sync + 'static,
        lo: f64,
        hi: f64,
        x0: f64,
    ) -> Result<Self> {
        if !(lo < x0 && x0 < hi) {
            return Err(Error::Domain { x: x0, lo, hi });
        }
        Ok(Self::with_kind(Kind::Custom { a: Arc::new(a), lo, hi, name: name.into() }, x0))
    }

    fn with_kind(kind: Kind, x0: f64) -> Self {
        WeightSpec { kind, x0, reflected: false }
    }

    /// Parses `ou`, `hermite`, `zero`, `laguerre:<α>` or `jacobi:<α>,<β>`.
    pub fn preset(name: &str) -> Result<Self> {
        let num = |s: &str| parse_q(s).map(|q| to_f64(&q));
        match name.split_once(':') {
            None => match name {
                "ou" => Ok(Self::ou()),
                "hermite" => Ok(Self::hermite()),
                "zero" => Ok(Self::zero()),
                _ => Err(Error::Parse(format!("unknown preset {name:?}"))),
            },
            Some(("laguerre", a)) => Ok(Self::laguerre(num(a)?)),
            Some(("jacobi", ab)) => {
                let (a, b) = ab
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("jacobi preset needs α,β: {name:?}")))?;
                Ok(Self::jacobi(num(a)?, num(b)?))
            }
            _ => Err(Error::Parse(format!("unknown preset {name:?}"))),
        }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            Kind::Ou => "ou".into(),
            Kind::Hermite => "hermite".into(),
            Kind::Laguerre { alpha } => format!("laguerre:{alpha}"),
            Kind::Jacobi { alpha, beta } => format!("jacobi:{alpha},{beta}"),
            Kind::Zero => "zero".into(),
            Kind::Custom { name, .. } => name.clone(),
        }
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn with_basepoint(&self, x0: f64) -> Result<Self> {
        let (lo, hi) = self.domain();
        if !(lo < x0 && x0 < hi) {
            return Err(Error::Domain { x: x0, lo, hi });
        }
        Ok(WeightSpec { x0, ..self.clone() })
    }

    /// The weight of `ã(x) = a(-x)` with basepoint `-x₀`.
    pub fn reflected(&self) -> Self {
        WeightSpec { kind: self.kind.clone(), x0: -self.x0, reflected: !self.reflected }
    }

    fn raw_domain(&self) -> (f64, f64) {
        match &self.kind {
            Kind::Laguerre { .. } => (0.0, f64::INFINITY),
            Kind::Jacobi { .. } => (-1.0, 1.0),
            Kind::Custom { lo, hi, .. } => (*lo, *hi),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Open interval on which `a` is continuous.
    pub fn domain(&self) -> (f64, f64) {
        let (lo, hi) = self.raw_domain();
        if self.reflected {
            (-hi, -lo)
        } else {
            (lo, hi)
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let (lo, hi) = self.domain();
        lo < x && x < hi
    }

    fn check(&self, x: f64) -> Result<()> {
        if self.contains(x) {
            Ok(())
        } else {
            let (lo, hi) = self.domain();
            Err(Error::Domain { x, lo, hi })
        }
    }

    fn raw_a(&self, x: f64) -> f64 {
        match &self.kind {
            Kind::Ou => 2.0 * x,
            Kind::Hermite => x,
            Kind::Laguerre { alpha } => alpha / x - 1.0,
            Kind::Jacobi { alpha, beta } => -alpha / (1.0 - x) + beta / (1.0 + x),
            Kind::Zero => 0.0,
            Kind::Custom { a, .. } => a(x),
        }
    }

    /// A primitive of the unreflected coefficient, for closed-form kinds.
    fn raw_primitive(&self, x: f64) -> Option<f64> {
        match &self.kind {
            Kind::Ou => Some(x * x),
            Kind::Hermite => Some(0.5 * x * x),
            Kind::Laguerre { alpha } => Some(alpha * x.ln() - x),
            Kind::Jacobi { alpha, beta } => Some(alpha * (1.0 - x).ln() + beta * (1.0 + x).ln()),
            Kind::Zero => Some(0.0),
            Kind::Custom { .. } => None,
        }
    }

    pub fn a(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        Ok(self.a_unchecked(x))
    }

    fn a_unchecked(&self, x: f64) -> f64 {
        if self.reflected {
            self.raw_a(-x)
        } else {
            self.raw_a(x)
        }
    }

    /// `A(x) = ∫_{x₀}^x a`.
    pub fn antiderivative(&self, x: f64) -> Result<f64> {
        self.check(x)?;
        let prim = |t: f64| {
            if self.reflected {
                self.raw_primitive(-t).map(|v| -v)
            } else {
                self.raw_primitive(t)
            }
        };
        match (prim(x), prim(self.x0)) {
            (Some(fx), Some(f0)) => Ok(fx - f0),
            _ => {
                let cfg = AdaptiveConfig { abs_tol: 1e-15, rel_tol: 1e-13, max_panels: 2000 };
                Ok(integrate(|t| self.a_unchecked(t), self.x0, x, &cfg)?.value)
            }
        }
    }

    /// `ℰ(x) = e^{-A(x)}`.
    pub fn e(&self, x: f64) -> Result<f64> {
        Ok((-self.antiderivative(x)?).exp())
    }

    /// `ℰ(x)^{-1}`.
    pub fn e_inv(&self, x: f64) -> Result<f64> {
        Ok(self.antiderivative(x)?.exp())
    }

    /// `ℰ(x) / ℰ(y) = exp(-∫_y^x a)`.
    pub fn e_ratio(&self, x: f64, y: f64) -> Result<f64> {
        Ok((self.antiderivative(y)? - self.antiderivative(x)?).exp())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn ou_weight_value() {
        let w = WeightSpec::ou();
        assert!((w.e(1.0).unwrap() - (-1.0f64).exp()).abs() < 1e-16);
        assert_eq!(w.antiderivative(0.0).unwrap(), 0.0);
    }

    #[test]
    fn primitive_vanishes_at_basepoint() {
        for w in [WeightSpec::laguerre(0.5), WeightSpec::jacobi(0.25, 0.75), WeightSpec::hermite()] {
            let w = w.with_basepoint(0.3).unwrap();
            assert_eq!(w.antiderivative(0.3).unwrap(), 0.0);
        }
    }

    #[test]
    fn closed_forms_match_numeric_integration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cfg = AdaptiveConfig::default();
        for w in [
            WeightSpec::ou(),
            WeightSpec::hermite(),
            WeightSpec::laguerre(0.5),
            WeightSpec::jacobi(1.0 / 3.0, 0.25),
            WeightSpec::laguerre(0.3).reflected(),
        ] {
            let (lo, hi) = w.domain();
            let (lo, hi) = (lo.max(-4.0) + 0.05, hi.min(4.0) - 0.05);
            for _ in 0..50 {
                let x = rng.random_range(lo..hi);
                let closed = w.antiderivative(x).unwrap();
                let numeric = integrate(|t| w.a(t).unwrap(), w.x0(), x, &cfg).unwrap().value;
                assert!((closed - numeric).abs() <= 1e-10 * closed.abs().max(1.0), "{w:?} at {x}");
            }
        }
    }

    #[test]
    fn reflection_negates_primitive() {
        let w = WeightSpec::jacobi(0.2, 0.6).with_basepoint(0.1).unwrap();
        let r = w.reflected();
        assert_eq!(r.domain(), (-1.0, 1.0));
        for &x in &[-0.8, -0.2, 0.5] {
            assert!((r.a(x).unwrap() - w.a(-x).unwrap()).abs() < 1e-15);
            assert!((r.antiderivative(x).unwrap() + w.antiderivative(-x).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn custom_coefficient_and_domain_errors() {
        let w = WeightSpec::custom("cubic", |x| x * x * x, -5.0, 5.0, 0.0).unwrap();
        assert!((w.antiderivative(2.0).unwrap() - 4.0).abs() < 1e-12);
        assert!(matches!(WeightSpec::laguerre(0.5).e(-1.0), Err(Error::Domain { .. })));
        assert!(WeightSpec::preset("jacobi:1/2,1/3").is_ok());
        assert!(WeightSpec::preset("legendre").is_err());
    }
}
