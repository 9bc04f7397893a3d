//! Functions of the form `base(x) · p(x)` with `p` polynomial, closed under
//! differentiation. These carry the Rodrigues formulas and the eigen
//! identities on weighted ("starred") functions.

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::rational::{as_nonneg_usize, fmt_q, qi, Q};
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Base {
    /// `e^{sign · x²}`
    Gauss { sign: i8 },
    /// `e^{sign · x} x^mu`
    ExpPower { sign: i8, mu: Q },
    /// `(1 - x)^p (1 + x)^q`
    TwoFactor { p: Q, q: Q },
}

#[derive(Clone, Debug, PartialEq)]
pub struct PowerForm {
    pub base: Base,
    pub poly: Poly,
}

fn sign_q(s: i8) -> Q {
    qi(s as i64)
}

fn integer_gap(hi: &Q, lo: &Q, what: &str) -> Result<usize> {
    as_nonneg_usize(&(hi - lo)).ok_or_else(|| {
        Error::Consistency(format!(
            "{what} exponents {} and {} differ by a non-integer",
            fmt_q(hi),
            fmt_q(lo)
        ))
    })
}

fn one_minus_x() -> Poly {
    Poly::from_ints(&[1, -1])
}

fn one_plus_x() -> Poly {
    Poly::from_ints(&[1, 1])
}

impl PowerForm {
    pub fn new(base: Base, poly: Poly) -> Self {
        PowerForm { base, poly }
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        PowerForm { base: self.base.clone(), poly: &self.poly * p }
    }

    pub fn scale(&self, c: &Q) -> Self {
        PowerForm { base: self.base.clone(), poly: self.poly.scale(c) }
    }

    pub fn derivative(&self) -> Self {
        let p = &self.poly;
        match &self.base {
            Base::Gauss { sign } => {
                let poly = &p.derivative() + &(&Poly::x() * p).scale(&qi(2 * *sign as i64));
                PowerForm { base: self.base.clone(), poly }
            }
            Base::ExpPower { sign, mu } => {
                // x^{mu-1} e^{sx} [ (s x + mu) p + x p' ]
                let lin = Poly::linear(mu.clone(), sign_q(*sign));
                let poly = &(&lin * p) + &(&Poly::x() * &p.derivative());
                PowerForm {
                    base: Base::ExpPower { sign: *sign, mu: mu - Q::one() },
                    poly,
                }
            }
            Base::TwoFactor { p: a, q: b } => {
                // (1-x)^{a-1}(1+x)^{b-1} [ -a(1+x)p + b(1-x)p + (1-x²)p' ]
                let lin = &one_plus_x().scale(&-a) + &one_minus_x().scale(b);
                let poly = &(&lin * p) + &(&Poly::from_ints(&[1, 0, -1]) * &p.derivative());
                PowerForm {
                    base: Base::TwoFactor { p: a - Q::one(), q: b - Q::one() },
                    poly,
                }
            }
        }
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        (0..n).fold(self.clone(), |f, _| f.derivative())
    }

    /// Rewrites `self` over a base with smaller (or equal) exponents.
    fn lower_to(&self, target: &Base) -> Result<PowerForm> {
        match (&self.base, target) {
            (Base::Gauss { sign: s1 }, Base::Gauss { sign: s2 }) if s1 == s2 => Ok(self.clone()),
            (Base::ExpPower { sign: s1, mu: m1 }, Base::ExpPower { sign: s2, mu: m2 }) if s1 == s2 => {
                let k = integer_gap(m1, m2, "power")?;
                Ok(PowerForm { base: target.clone(), poly: self.poly.shift(k) })
            }
            (Base::TwoFactor { p: p1, q: q1 }, Base::TwoFactor { p: p2, q: q2 }) => {
                let kp = integer_gap(p1, p2, "(1-x)")?;
                let kq = integer_gap(q1, q2, "(1+x)")?;
                let poly = &(&self.poly * &one_minus_x().pow(kp)) * &one_plus_x().pow(kq);
                Ok(PowerForm { base: target.clone(), poly })
            }
            _ => Err(Error::Consistency(format!(
                "incompatible bases {:?} and {:?}",
                self.base, target
            ))),
        }
    }

    fn common_base(&self, other: &PowerForm) -> Result<Base> {
        match (&self.base, &other.base) {
            (Base::Gauss { sign: s1 }, Base::Gauss { sign: s2 }) if s1 == s2 => Ok(self.base.clone()),
            (Base::ExpPower { sign: s1, mu: m1 }, Base::ExpPower { sign: s2, mu: m2 }) if s1 == s2 => {
                Ok(Base::ExpPower { sign: *s1, mu: m1.clone().min(m2.clone()) })
            }
            (Base::TwoFactor { p: p1, q: q1 }, Base::TwoFactor { p: p2, q: q2 }) => Ok(Base::TwoFactor {
                p: p1.clone().min(p2.clone()),
                q: q1.clone().min(q2.clone()),
            }),
            _ => Err(Error::Consistency(format!(
                "incompatible bases {:?} and {:?}",
                self.base, other.base
            ))),
        }
    }

    pub fn add(&self, other: &PowerForm) -> Result<PowerForm> {
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let base = self.common_base(other)?;
        let a = self.lower_to(&base)?;
        let b = other.lower_to(&base)?;
        Ok(PowerForm { base, poly: &a.poly + &b.poly })
    }

    pub fn sub(&self, other: &PowerForm) -> Result<PowerForm> {
        self.add(&other.scale(&-Q::one()))
    }

    /// Returns `c` with `self = c · other`, if such a constant exists.
    pub fn ratio_to(&self, other: &PowerForm) -> Result<Option<Q>> {
        if other.is_zero() {
            return Ok(if self.is_zero() { Some(Q::zero()) } else { None });
        }
        let base = self.common_base(other)?;
        let a = self.lower_to(&base)?.poly;
        let b = other.lower_to(&base)?.poly;
        let c = a.leading() / b.leading();
        if a.degree() == b.degree() && a == b.scale(&c) {
            Ok(Some(c))
        } else if a.is_zero() {
            Ok(Some(Q::zero()))
        } else {
            Ok(None)
        }
    }

    /// Multiplies by the reciprocal-type prefactor `pre` and returns the
    /// resulting polynomial, failing if a non-polynomial factor survives.
    pub fn strip(&self, pre: &Base) -> Result<Poly> {
        let residual = |what: String| Error::Consistency(format!("residual non-polynomial term: {what}"));
        match (&self.base, pre) {
            (Base::Gauss { sign: s1 }, Base::Gauss { sign: s2 }) if s1 + s2 == 0 => Ok(self.poly.clone()),
            (Base::ExpPower { sign: s1, mu: m1 }, Base::ExpPower { sign: s2, mu: m2 }) if s1 + s2 == 0 => {
                let k = as_nonneg_usize(&(m1 + m2)).ok_or_else(|| residual(format!("x^{}", fmt_q(&(m1 + m2)))))?;
                Ok(self.poly.shift(k))
            }
            (Base::TwoFactor { p: p1, q: q1 }, Base::TwoFactor { p: p2, q: q2 }) => {
                let kp = as_nonneg_usize(&(p1 + p2)).ok_or_else(|| residual(format!("(1-x)^{}", fmt_q(&(p1 + p2)))))?;
                let kq = as_nonneg_usize(&(q1 + q2)).ok_or_else(|| residual(format!("(1+x)^{}", fmt_q(&(q1 + q2)))))?;
                Ok(&(&self.poly * &one_minus_x().pow(kp)) * &one_plus_x().pow(kq))
            }
            _ => Err(residual(format!("{:?} against {:?}", self.base, pre))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn gaussian_derivatives() {
        // d/dx e^{-x²} = -2x e^{-x²}
        let f = PowerForm::new(Base::Gauss { sign: -1 }, Poly::one());
        assert_eq!(f.derivative().poly, Poly::from_ints(&[0, -2]));
        // d²/dx² e^{x²} = (2 + 4x²) e^{x²}
        let g = PowerForm::new(Base::Gauss { sign: 1 }, Poly::one());
        assert_eq!(g.nth_derivative(2).poly, Poly::from_ints(&[2, 0, 4]));
    }

    #[test]
    fn exp_power_derivative() {
        // d/dx (e^{-x} x^{3/2}) = e^{-x} x^{1/2} (3/2 - x)
        let f = PowerForm::new(Base::ExpPower { sign: -1, mu: q(3, 2) }, Poly::one());
        let d = f.derivative();
        assert_eq!(d.base, Base::ExpPower { sign: -1, mu: q(1, 2) });
        assert_eq!(d.poly, Poly::linear(q(3, 2), qi(-1)));
    }

    #[test]
    fn two_factor_derivative_numeric() {
        let (a, b) = (q(1, 3), q(5, 4));
        let f = PowerForm::new(Base::TwoFactor { p: a, q: b }, Poly::from_ints(&[1, 2, -1]));
        let d = f.derivative();
        let eval = |g: &PowerForm, x: f64| {
            let Base::TwoFactor { p, q } = &g.base else { unreachable!() };
            (1.0 - x).powf(crate::rational::to_f64(p)) * (1.0 + x).powf(crate::rational::to_f64(q)) * g.poly.eval_f64(x)
        };
        for &x in &[-0.7, -0.1, 0.4, 0.9] {
            let h = 1e-6;
            let fd = (eval(&f, x + h) - eval(&f, x - h)) / (2.0 * h);
            assert!((fd - eval(&d, x)).abs() < 1e-7, "x = {x}");
        }
    }

    #[test]
    fn add_aligns_exponents() {
        let a = PowerForm::new(Base::ExpPower { sign: 1, mu: q(1, 2) }, Poly::one());
        let b = PowerForm::new(Base::ExpPower { sign: 1, mu: q(5, 2) }, Poly::one());
        let s = a.add(&b).unwrap();
        assert_eq!(s.base, Base::ExpPower { sign: 1, mu: q(1, 2) });
        assert_eq!(s.poly, Poly::from_ints(&[1, 0, 1]));
        let c = PowerForm::new(Base::ExpPower { sign: 1, mu: q(1, 3) }, Poly::one());
        assert!(a.add(&c).is_err());
    }

    #[test]
    fn strip_rejects_fractional_residue() {
        let f = PowerForm::new(Base::ExpPower { sign: 1, mu: q(1, 2) }, Poly::one());
        assert!(f.strip(&Base::ExpPower { sign: -1, mu: q(-1, 3) }).is_err());
        assert_eq!(f.strip(&Base::ExpPower { sign: -1, mu: q(3, 2) }).unwrap(), Poly::x().shift(1));
    }
}
