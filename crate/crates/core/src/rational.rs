//! Exact rational helpers shared by the polynomial and moment engines.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `"p/q"`, `"p"` or a finite decimal such as `"0.25"`.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.trim_start().starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" || int == "+" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac_part: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mag = Q::new(int_part.abs() * &scale + frac_part, scale);
        return Ok(if neg { -mag } else { mag });
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Q::from_integer(n))
}

/// Always renders with an explicit denominator: `3/1`, `-1/2`, `0/1`.
pub fn fmt_q(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational image of a double (every finite double is a dyadic rational).
pub fn from_f64(x: f64) -> Result<Q> {
    Q::from_float(x).ok_or_else(|| Error::Parameter(format!("non-finite value {x}")))
}

/// Generalised binomial coefficient `C(top, k)` for rational `top`.
pub fn binom(top: &Q, k: usize) -> Q {
    let mut acc = Q::one();
    for i in 0..k {
        acc *= top - qi(i as i64);
        acc /= qi(i as i64 + 1);
    }
    acc
}

/// Rising factorial `(a)_k`.
pub fn pochhammer(a: &Q, k: usize) -> Q {
    let mut acc = Q::one();
    for i in 0..k {
        acc *= a + qi(i as i64);
    }
    acc
}

pub fn factorial(n: usize) -> Q {
    (1..=n).fold(Q::one(), |acc, i| acc * qi(i as i64))
}

pub fn is_integer(x: &Q) -> bool {
    x.is_integer()
}

/// Returns the value as a nonnegative machine integer if it is one.
pub fn as_nonneg_usize(x: &Q) -> Option<usize> {
    if x.is_integer() && !x.is_negative() {
        x.to_integer().to_usize()
    } else {
        None
    }
}
