//! The inverse and classical polynomial families, each obtainable by three
//! independent constructions.

use super::operator::OperatorSpec;
use super::poly::Poly;
use super::powerform::{Base, PowerForm};
use super::series::{one_minus_t_pow, t_over_one_minus_t, Series};
use crate::error::{Error, Result};
use crate::rational::{binom, factorial, fmt_q, parse_q, pochhammer, q, qi, Q};
use num_traits::{One, Zero};
use serde::Serialize;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    InvHermite,
    InvLaguerre { alpha: Q },
    InvJacobi { alpha: Q, beta: Q },
    Hermite,
    Laguerre { alpha: Q },
    Jacobi { alpha: Q, beta: Q },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Recurrence,
    Rodrigues,
    Genfun,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rec" | "recurrence" => Ok(Method::Recurrence),
            "rodrigues" => Ok(Method::Rodrigues),
            "genfun" => Ok(Method::Genfun),
            _ => Err(Error::Parse(format!("unknown method {s:?}"))),
        }
    }
}

impl Family {
    /// Builds a family from its CLI name and optional parameters.
    pub fn from_name(name: &str, alpha: Option<&str>, beta: Option<&str>) -> Result<Self> {
        let need = |v: Option<&str>, what: &str| -> Result<Q> {
            parse_q(v.ok_or_else(|| Error::Parse(format!("{name} needs --{what}")))?)
        };
        Ok(match name {
            "inv-hermite" => Family::InvHermite,
            "hermite" => Family::Hermite,
            "inv-laguerre" => Family::InvLaguerre { alpha: need(alpha, "alpha")? },
            "laguerre" => Family::Laguerre { alpha: need(alpha, "alpha")? },
            "inv-jacobi" => Family::InvJacobi { alpha: need(alpha, "alpha")?, beta: need(beta, "beta")? },
            "jacobi" => Family::Jacobi { alpha: need(alpha, "alpha")?, beta: need(beta, "beta")? },
            _ => return Err(Error::Parse(format!("unknown family {name:?}"))),
        })
    }

    pub fn operator(&self) -> OperatorSpec {
        match self {
            Family::InvHermite => OperatorSpec::inverse_hermite(),
            Family::InvLaguerre { alpha } => OperatorSpec::inverse_laguerre(alpha),
            Family::InvJacobi { alpha, beta } => OperatorSpec::inverse_jacobi(alpha, beta),
            Family::Hermite => OperatorSpec::hermite(),
            Family::Laguerre { alpha } => OperatorSpec::laguerre(alpha),
            Family::Jacobi { alpha, beta } => OperatorSpec::jacobi(alpha, beta),
        }
    }

    /// Eigenvalue of [`Family::operator`] on the degree `n` member.
    pub fn eigenvalue(&self, n: usize) -> Q {
        let n = qi(n as i64);
        match self {
            Family::InvHermite | Family::Hermite => qi(2) * n,
            Family::InvLaguerre { .. } => n,
            Family::Laguerre { .. } => -n,
            Family::InvJacobi { alpha, beta } => -(&n * (&n - alpha - beta + qi(1))),
            Family::Jacobi { alpha, beta } => -(&n * (&n + alpha + beta + qi(1))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::InvHermite => write!(f, "inv-hermite"),
            Family::Hermite => write!(f, "hermite"),
            Family::InvLaguerre { alpha } => write!(f, "inv-laguerre(alpha={})", fmt_q(alpha)),
            Family::Laguerre { alpha } => write!(f, "laguerre(alpha={})", fmt_q(alpha)),
            Family::InvJacobi { alpha, beta } => {
                write!(f, "inv-jacobi(alpha={}, beta={})", fmt_q(alpha), fmt_q(beta))
            }
            Family::Jacobi { alpha, beta } => {
                write!(f, "jacobi(alpha={}, beta={})", fmt_q(alpha), fmt_q(beta))
            }
        }
    }
}

pub fn generate(family: &Family, n_max: usize, method: Method) -> Result<Vec<Poly>> {
    match method {
        Method::Recurrence => recurrence(family, n_max),
        Method::Rodrigues => (0..=n_max).map(|n| rodrigues(family, n)).collect(),
        Method::Genfun => genfun(family, n_max),
    }
}

/// Classical Jacobi three-term recurrence for parameters `(a, b)`.
fn jacobi_recurrence(a: &Q, b: &Q, n_max: usize) -> Result<Vec<Poly>> {
    let s = a + b;
    let mut out = vec![Poly::one()];
    if n_max == 0 {
        return Ok(out);
    }
    // P_1 from the explicit sum; the general pivot can vanish at n = 0.
    out.push(Poly::linear((a - b) / qi(2), (&s + qi(2)) / qi(2)));
    for n in 1..n_max {
        let nq = qi(n as i64);
        let two_n_s = qi(2) * &nq + &s;
        let pivot = qi(2) * (&nq + qi(1)) * (&nq + &s + qi(1)) * &two_n_s;
        if pivot.is_zero() {
            return Err(Error::RecurrencePivot { step: n });
        }
        let c1 = (&two_n_s + qi(1)) * (&two_n_s + qi(2)) * &two_n_s;
        let c0 = (&two_n_s + qi(1)) * (a * a - b * b);
        let cm = qi(2) * (&nq + a) * (&nq + b) * (&two_n_s + qi(2));
        let next = &(&Poly::linear(c0, c1) * &out[n]) - &out[n - 1].scale(&cm);
        out.push(next.scale(&(Q::one() / pivot)));
    }
    Ok(out)
}

pub fn recurrence(family: &Family, n_max: usize) -> Result<Vec<Poly>> {
    let mut out = vec![Poly::one()];
    match family {
        Family::InvHermite | Family::Hermite => {
            let sign = if *family == Family::Hermite { 1 } else { -1 };
            for n in 0..n_max {
                let mut next = (&Poly::x() * &out[n]).scale(&qi(2 * sign));
                if n > 0 {
                    next = &next - &out[n - 1].scale(&qi(2 * sign * n as i64));
                }
                out.push(next);
            }
        }
        Family::InvLaguerre { alpha } | Family::Laguerre { alpha } => {
            // classical: (n+1)L_{n+1} = (2n+1+a-x)L_n - (n+a)L_{n-1}; the
            // inverse family is L_n^{-α}(-x).
            let (a, sx) = match family {
                Family::InvLaguerre { .. } => (-alpha.clone(), 1),
                _ => (alpha.clone(), -1),
            };
            for n in 0..n_max {
                let nq = qi(n as i64);
                let lin = Poly::linear(qi(2) * &nq + qi(1) + &a, qi(sx));
                let mut next = &lin * &out[n];
                if n > 0 {
                    next = &next - &out[n - 1].scale(&(&nq + &a));
                }
                out.push(next.scale(&(Q::one() / (nq + qi(1)))));
            }
        }
        Family::InvJacobi { alpha, beta } => return jacobi_recurrence(&-alpha.clone(), &-beta.clone(), n_max),
        Family::Jacobi { alpha, beta } => return jacobi_recurrence(alpha, beta, n_max),
    }
    Ok(out)
}

pub fn rodrigues(family: &Family, n: usize) -> Result<Poly> {
    let nq = qi(n as i64);
    let sgn = if n.is_multiple_of(2) { Q::one() } else { -Q::one() };
    let jacobi_pref = &sgn / (num_traits::pow(qi(2), n) * factorial(n));
    let (start, pre, factor) = match family {
        Family::InvHermite => (Base::Gauss { sign: 1 }, Base::Gauss { sign: -1 }, sgn),
        Family::Hermite => (Base::Gauss { sign: -1 }, Base::Gauss { sign: 1 }, sgn),
        Family::InvLaguerre { alpha } => (
            Base::ExpPower { sign: 1, mu: &nq - alpha },
            Base::ExpPower { sign: -1, mu: alpha.clone() },
            Q::one() / factorial(n),
        ),
        Family::Laguerre { alpha } => (
            Base::ExpPower { sign: -1, mu: &nq + alpha },
            Base::ExpPower { sign: 1, mu: -alpha.clone() },
            Q::one() / factorial(n),
        ),
        Family::InvJacobi { alpha, beta } => (
            Base::TwoFactor { p: &nq - alpha, q: &nq - beta },
            Base::TwoFactor { p: alpha.clone(), q: beta.clone() },
            jacobi_pref,
        ),
        Family::Jacobi { alpha, beta } => (
            Base::TwoFactor { p: &nq + alpha, q: &nq + beta },
            Base::TwoFactor { p: -alpha.clone(), q: -beta.clone() },
            jacobi_pref,
        ),
    };
    let d = PowerForm::new(start, Poly::one()).nth_derivative(n);
    let p = d.strip(&pre)?.scale(&factor);
    if p.degree() != Some(n) {
        return Err(Error::Consistency(format!("Rodrigues output for n = {n} has degree {:?}", p.degree())));
    }
    Ok(p)
}

fn linear_series(c0: Poly, c1: Poly, c2: Poly, order: usize) -> Series {
    Series::from_coeffs(vec![c0, c1, c2], order)
}

/// Generating function `ω(x, t) = Σ c_n(x) t^n` of the inverse Jacobi family.
fn jacobi_omega(alpha: &Q, beta: &Q, order: usize) -> Result<Series> {
    // W = -2xt + t², R = sqrt(1 + W)
    let w = linear_series(Poly::zero(), Poly::from_ints(&[0, -2]), Poly::one(), order);
    let r_minus_1 = w.binomial_pow(&q(1, 2))?.sub(&Series::one(order))?;
    let t = Series::monomial(Poly::one(), 1, order);
    let half = q(1, 2);
    let u = r_minus_1.sub(&t)?.scale(&half);
    let v = r_minus_1.add(&t)?.scale(&half);
    u.binomial_pow(alpha)?
        .mul(&v.binomial_pow(beta)?)?
        .mul(&w.binomial_pow(&q(-1, 2))?)
}

fn genfun_series(family: &Family, order: usize) -> Result<Series> {
    match family {
        Family::InvHermite | Family::Hermite => {
            let sign = if *family == Family::Hermite { 1 } else { -1 };
            linear_series(Poly::zero(), Poly::from_ints(&[0, 2 * sign]), Poly::from_ints(&[-sign]), order).exp()
        }
        Family::InvLaguerre { alpha } => {
            let pre = one_minus_t_pow(&(alpha - qi(1)), order);
            let arg = Series::from_coeffs(t_over_one_minus_t(order).coeffs().iter().map(|c| c * &Poly::x()).collect(), order);
            pre.mul(&arg.exp()?)
        }
        Family::Laguerre { alpha } => {
            let pre = one_minus_t_pow(&(-alpha.clone() - qi(1)), order);
            let arg = Series::from_coeffs(
                t_over_one_minus_t(order).coeffs().iter().map(|c| c * &Poly::from_ints(&[0, -1])).collect(),
                order,
            );
            pre.mul(&arg.exp()?)
        }
        Family::InvJacobi { alpha, beta } => jacobi_omega(alpha, beta, order),
        Family::Jacobi { alpha, beta } => jacobi_omega(&-alpha.clone(), &-beta.clone(), order),
    }
}

/// Coefficients of the generating function, computed with guard terms at two
/// truncation orders whose common prefix must agree.
pub fn genfun(family: &Family, n_max: usize) -> Result<Vec<Poly>> {
    let wide = genfun_series(family, n_max + 5)?;
    let narrow = genfun_series(family, n_max + 3)?;
    if wide.truncate(n_max + 3)? != narrow {
        return Err(Error::Consistency("generating function guard terms disagree".into()));
    }
    let hermite = matches!(family, Family::InvHermite | Family::Hermite);
    (0..=n_max)
        .map(|n| {
            let c = wide.coeff(n)?;
            Ok(if hermite { c.scale(&factorial(n)) } else { c.clone() })
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct EigenReport {
    pub family: String,
    /// `(n, λ_n)` for every checked degree.
    pub eigenvalues: Vec<(usize, String)>,
}

/// Exact check `operator(P_n) = λ_n P_n` for `n ≤ n_max`.
pub fn eigencheck(family: &Family, n_max: usize) -> Result<EigenReport> {
    let polys = match recurrence(family, n_max) {
        Ok(p) => p,
        Err(Error::RecurrencePivot { .. }) => generate(family, n_max, Method::Rodrigues)?,
        Err(e) => return Err(e),
    };
    let op = family.operator();
    let mut eigenvalues = Vec::with_capacity(n_max + 1);
    for (n, p) in polys.iter().enumerate() {
        let lam = family.eigenvalue(n);
        let residual = &op.apply(p) - &p.scale(&lam);
        if !residual.is_zero() {
            return Err(Error::Eigen { n, residual: residual.to_string() });
        }
        eigenvalues.push((n, fmt_q(&lam)));
    }
    Ok(EigenReport { family: family.to_string(), eigenvalues })
}

/// Hypergeometric form of the inverse Jacobi polynomial of degree `n`.
pub fn hypergeometric(n: usize, alpha: &Q, beta: &Q) -> Result<Poly> {
    let lead = binom(&(qi(n as i64) - alpha), n);
    let top = qi(n as i64) - alpha - beta + qi(1);
    let bottom = qi(1) - alpha;
    let z = Poly::linear(q(1, 2), q(-1, 2));
    let mut zk = Poly::one();
    let mut sum = Poly::zero();
    for k in 0..=n {
        let den = pochhammer(&bottom, k);
        if den.is_zero() {
            return Err(Error::Parameter(format!(
                "1 - alpha = {} is a nonpositive integer within range",
                fmt_q(&bottom)
            )));
        }
        let sgn = if k % 2 == 0 { Q::one() } else { -Q::one() };
        let c = sgn * binom(&qi(n as i64), k) * pochhammer(&top, k) / den;
        sum = &sum + &zk.scale(&c);
        zk = &zk * &z;
    }
    Ok(sum.scale(&lead))
}

/// `(P̃_n(1), P̃_n(-1))` in closed form, asserted against the polynomial.
pub fn endpoint_values(n: usize, alpha: &Q, beta: &Q) -> Result<(Q, Q)> {
    let nq = qi(n as i64);
    let at_one = binom(&(&nq - alpha), n);
    let sgn = if n.is_multiple_of(2) { Q::one() } else { -Q::one() };
    let at_minus_one = sgn * binom(&(&nq - beta), n);
    let p = rodrigues(&Family::InvJacobi { alpha: alpha.clone(), beta: beta.clone() }, n)?;
    if p.eval(&qi(1)) != at_one || p.eval(&qi(-1)) != at_minus_one {
        return Err(Error::Consistency(format!("endpoint values disagree at n = {n}")));
    }
    Ok((at_one, at_minus_one))
}

/// Leading coefficient `2^{-n} C(2n - α - β, n)` of the inverse Jacobi polynomial.
pub fn inverse_jacobi_leading(n: usize, alpha: &Q, beta: &Q) -> Q {
    binom(&(qi(2 * n as i64) - alpha - beta), n) / num_traits::pow(qi(2), n)
}
