//! Real functions on the line together with what is known about their tails.

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Behaviour of a function beyond the point `at`, in the direction of the
/// tail it describes (towards -∞ for a left tail, +∞ for a right tail).
/// `d` is the distance beyond `at`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TailHint {
    /// Equal to `value` beyond `at`.
    Constant { value: f64, at: f64 },
    /// `|v| <= bound · e^{-rate d}` beyond `at`.
    Exponential { bound: f64, rate: f64, at: f64 },
    /// `|v| <= bound · e^{-rate d²}` beyond `at`.
    Gaussian { bound: f64, rate: f64, at: f64 },
    /// `|v| <= bound` everywhere on that side.
    Bounded { bound: f64 },
    Unknown,
}

impl TailHint {
    pub fn zero_beyond(at: f64) -> Self {
        TailHint::Constant { value: 0.0, at }
    }

    /// Re-expresses the hint for the profile `s ↦ v(x + dir·s)`, `s >= 0`.
    pub fn to_profile(self, x: f64, dir: f64) -> Self {
        let shift = |at: f64| dir * (at - x);
        match self {
            TailHint::Constant { value, at } => TailHint::Constant { value, at: shift(at) },
            TailHint::Exponential { bound, rate, at } => TailHint::Exponential { bound, rate, at: shift(at) },
            TailHint::Gaussian { bound, rate, at } => TailHint::Gaussian { bound, rate, at: shift(at) },
            other => other,
        }
    }

    /// Sup bound of `|v|` at distance `>= d` beyond `at`, if known.
    pub fn sup_beyond(&self, d: f64) -> Option<f64> {
        let d = d.max(0.0);
        match *self {
            TailHint::Constant { value, .. } => Some(value.abs()),
            TailHint::Exponential { bound, rate, .. } => Some(bound * (-rate * d).exp()),
            TailHint::Gaussian { bound, rate, .. } => Some(bound * (-rate * d * d).exp()),
            TailHint::Bounded { bound } => Some(bound),
            TailHint::Unknown => None,
        }
    }

    pub fn at(&self) -> Option<f64> {
        match *self {
            TailHint::Constant { at, .. } | TailHint::Exponential { at, .. } | TailHint::Gaussian { at, .. } => Some(at),
            _ => None,
        }
    }
}

#[derive(Clone)]
pub struct Func {
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub left: TailHint,
    pub right: TailHint,
    pub label: String,
}

impl fmt::Debug for Func {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Func")
            .field("label", &self.label)
            .field("left", &self.left)
            .field("right", &self.right)
            .finish()
    }
}

/// The standard bump `exp(-1 / (1 - z²))` on `|z| < 1`.
pub fn bump_profile(z: f64) -> f64 {
    if z.abs() >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - z * z)).exp()
    }
}

impl Func {
    pub fn new(
        f: impl Fn(f64) -> f64 + Send + Sync + 'static,
        left: TailHint,
        right: TailHint,
        label: impl Into<String>,
    ) -> Self {
        Func { f: Arc::new(f), left, right, label: label.into() }
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.f)(x)
    }

    pub fn constant(c: f64) -> Self {
        Func::new(
            move |_| c,
            TailHint::Constant { value: c, at: f64::INFINITY },
            TailHint::Constant { value: c, at: f64::NEG_INFINITY },
            format!("const:{c}"),
        )
    }

    /// `e^{λ y}`; the decaying side carries an exponential hint.
    pub fn exp(lambda: f64) -> Self {
        if lambda == 0.0 {
            return Func::constant(1.0);
        }
        let (left, right) = if lambda > 0.0 {
            (TailHint::Exponential { bound: 1.0, rate: lambda, at: 0.0 }, TailHint::Unknown)
        } else {
            (TailHint::Unknown, TailHint::Exponential { bound: 1.0, rate: -lambda, at: 0.0 })
        };
        Func::new(move |y| (lambda * y).exp(), left, right, format!("exp:{lambda}"))
    }

    /// Smooth bump of half-width `width` centred at `center`.
    pub fn bump(center: f64, width: f64) -> Self {
        Func::new(
            move |y| bump_profile((y - center) / width),
            TailHint::zero_beyond(center - width),
            TailHint::zero_beyond(center + width),
            format!("bump:{center},{width}"),
        )
    }

    /// `e^{-rate (y - center)²}`.
    pub fn gaussian(center: f64, rate: f64) -> Self {
        let hint = TailHint::Gaussian { bound: 1.0, rate, at: center };
        Func::new(
            move |y| (-rate * (y - center) * (y - center)).exp(),
            hint,
            hint,
            format!("gauss:{center},{rate}"),
        )
    }

    pub fn scale(&self, c: f64) -> Self {
        let f = self.f.clone();
        let sc = |h: TailHint| match h {
            TailHint::Constant { value, at } => TailHint::Constant { value: c * value, at },
            TailHint::Exponential { bound, rate, at } => TailHint::Exponential { bound: c.abs() * bound, rate, at },
            TailHint::Gaussian { bound, rate, at } => TailHint::Gaussian { bound: c.abs() * bound, rate, at },
            TailHint::Bounded { bound } => TailHint::Bounded { bound: c.abs() * bound },
            TailHint::Unknown => TailHint::Unknown,
        };
        Func::new(move |y| c * f(y), sc(self.left), sc(self.right), format!("{c}*{}", self.label))
    }

    /// `y ↦ f(-y)`.
    pub fn reflect(&self) -> Self {
        let f = self.f.clone();
        let flip = |h: TailHint| match h {
            TailHint::Constant { value, at } => TailHint::Constant { value, at: -at },
            TailHint::Exponential { bound, rate, at } => TailHint::Exponential { bound, rate, at: -at },
            TailHint::Gaussian { bound, rate, at } => TailHint::Gaussian { bound, rate, at: -at },
            other => other,
        };
        Func::new(move |y| f(-y), flip(self.right), flip(self.left), format!("reflect({})", self.label))
    }

    /// Parses `exp:<λ>`, `bump:<c>,<w>`, `gauss:<c>,<rate>` or `const:<c>`.
    pub fn parse(s: &str) -> Result<Self> {
        let num = |t: &str| -> Result<f64> {
            crate::rational::parse_q(t).map(|q| crate::rational::to_f64(&q))
        };
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("function needs kind:args, got {s:?}")))?;
        let parts: Vec<&str> = args.split(',').collect();
        let two = || -> Result<(f64, f64)> {
            if parts.len() != 2 {
                return Err(Error::Parse(format!("{kind} needs two arguments")));
            }
            Ok((num(parts[0])?, num(parts[1])?))
        };
        match kind {
            "exp" => Ok(Func::exp(num(args)?)),
            "const" => Ok(Func::constant(num(args)?)),
            "bump" => {
                let (c, w) = two()?;
                if w <= 0.0 {
                    return Err(Error::Parameter("bump width must be positive".into()));
                }
                Ok(Func::bump(c, w))
            }
            "gauss" => {
                let (c, r) = two()?;
                if r <= 0.0 {
                    return Err(Error::Parameter("gaussian rate must be positive".into()));
                }
                Ok(Func::gaussian(c, r))
            }
            _ => Err(Error::Parse(format!("unknown function kind {kind:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_hint_shift() {
        let h = TailHint::zero_beyond(-1.0).to_profile(2.0, -1.0);
        assert_eq!(h, TailHint::Constant { value: 0.0, at: 3.0 });
        let h = TailHint::zero_beyond(5.0).to_profile(2.0, 1.0);
        assert_eq!(h, TailHint::Constant { value: 0.0, at: 3.0 });
    }

    #[test]
    fn parse_and_reflect() {
        let b = Func::parse("bump:1,1/2").unwrap();
        assert_eq!(b.eval(1.0), (-1.0f64).exp());
        assert_eq!(b.eval(1.6), 0.0);
        let r = b.reflect();
        assert_eq!(r.eval(-1.0), b.eval(1.0));
        assert_eq!(r.left, TailHint::zero_beyond(-1.5));
        assert!(Func::parse("bump:1").is_err());
        assert!(Func::parse("wave:1").is_err());
    }
}
