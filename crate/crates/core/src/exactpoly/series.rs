//! Truncated power series in `t` whose coefficients are polynomials in `x`.

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use num_traits::{One, Zero};

/// `Σ_{k<order} c_k(x) t^k`; coefficients at index `>= order` are unknown.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    coeffs: Vec<Poly>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![Poly::zero(); order] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order > 0 {
            s.coeffs[0] = Poly::one();
        }
        s
    }

    /// Builds from leading coefficients, padding with zeros up to `order`.
    pub fn from_coeffs(mut coeffs: Vec<Poly>, order: usize) -> Self {
        coeffs.resize(order, Poly::zero());
        Series { coeffs }
    }

    /// The monomial `c t^k`.
    pub fn monomial(c: Poly, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k < order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> Result<&Poly> {
        self.coeffs
            .get(k)
            .ok_or(Error::Truncation { order: self.order(), requested: k })
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    fn check_orders(&self, other: &Series) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::Consistency(format!(
                "series orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.check_orders(other)?;
        Ok(Series {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.check_orders(other)?;
        Ok(Series {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn scale(&self, c: &Q) -> Series {
        Series { coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect() }
    }

    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.check_orders(other)?;
        let n = self.order();
        let mut out = vec![Poly::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Ok(Series { coeffs: out })
    }

    fn require_no_constant(&self, what: &str) -> Result<()> {
        if self.coeffs.first().is_some_and(|c| !c.is_zero()) {
            return Err(Error::Contract(format!("{what} needs a series without constant term")));
        }
        Ok(())
    }

    /// `exp(S)` for `S(0) = 0`, via `n E_n = Σ k S_k E_{n-k}`.
    pub fn exp(&self) -> Result<Series> {
        self.require_no_constant("exp")?;
        let n = self.order();
        let mut e = vec![Poly::zero(); n];
        if n == 0 {
            return Ok(Series { coeffs: e });
        }
        e[0] = Poly::one();
        for m in 1..n {
            let mut acc = Poly::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() && !e[m - k].is_zero() {
                    acc = &acc + &(&self.coeffs[k] * &e[m - k]).scale(&qi(k as i64));
                }
            }
            e[m] = acc.scale(&(Q::one() / qi(m as i64)));
        }
        Ok(Series { coeffs: e })
    }

    /// `(1 + S)^r` for `S(0) = 0`, via `(1 + S) P' = r S' P`.
    pub fn binomial_pow(&self, r: &Q) -> Result<Series> {
        self.require_no_constant("binomial power")?;
        let n = self.order();
        let mut p = vec![Poly::zero(); n];
        if n == 0 {
            return Ok(Series { coeffs: p });
        }
        p[0] = Poly::one();
        for m in 1..n {
            let mut acc = Poly::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() || p[m - k].is_zero() {
                    continue;
                }
                let w = r * qi(k as i64) - qi((m - k) as i64);
                if w.is_zero() {
                    continue;
                }
                acc = &acc + &(&self.coeffs[k] * &p[m - k]).scale(&w);
            }
            p[m] = acc.scale(&(Q::one() / qi(m as i64)));
        }
        Ok(Series { coeffs: p })
    }

    /// Keeps the first `order` coefficients.
    pub fn truncate(&self, order: usize) -> Result<Series> {
        if order > self.order() {
            return Err(Error::Truncation { order: self.order(), requested: order - 1 });
        }
        Ok(Series { coeffs: self.coeffs[..order].to_vec() })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Poly::is_zero)
    }
}

/// `(1 - t)^r` as a series with constant coefficients.
pub fn one_minus_t_pow(r: &Q, order: usize) -> Series {
    let mut c = Q::one();
    let mut coeffs = Vec::with_capacity(order);
    for k in 0..order {
        coeffs.push(Poly::constant(c.clone()));
        // C(r, k+1)(-1)^{k+1} from C(r, k)(-1)^k
        c = -(&c * (r - qi(k as i64)) / qi(k as i64 + 1));
    }
    Series::from_coeffs(coeffs, order)
}

/// `Σ_{k>=1} t^k = t / (1 - t)`.
pub fn t_over_one_minus_t(order: usize) -> Series {
    let coeffs = (0..order)
        .map(|k| if k == 0 { Poly::zero() } else { Poly::one() })
        .collect();
    Series { coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{factorial, q};

    #[test]
    fn exp_of_t_gives_inverse_factorials() {
        let t = Series::monomial(Poly::one(), 1, 8);
        let e = t.exp().unwrap();
        for k in 0..8 {
            assert_eq!(e.coeff(k).unwrap(), &Poly::constant(Q::one() / factorial(k)));
        }
    }

    #[test]
    fn binomial_power_matches_closed_form() {
        let t = Series::monomial(Poly::one(), 1, 7);
        let r = q(-1, 3);
        let b = t.scale(&qi(-1)).binomial_pow(&r).unwrap();
        assert_eq!(b, one_minus_t_pow(&r, 7));
    }

    #[test]
    fn square_root_squares_back() {
        let w = Series::from_coeffs(vec![Poly::zero(), Poly::from_ints(&[0, -2]), Poly::one()], 9);
        let r = w.binomial_pow(&q(1, 2)).unwrap();
        let sq = r.mul(&r).unwrap();
        assert_eq!(sq, Series::one(9).add(&w).unwrap());
    }

    #[test]
    fn exp_is_a_homomorphism() {
        let a = Series::from_coeffs(vec![Poly::zero(), Poly::x(), Poly::from_ints(&[2])], 8);
        let b = Series::from_coeffs(vec![Poly::zero(), Poly::from_ints(&[1, 1])], 8);
        let lhs = a.add(&b).unwrap().exp().unwrap();
        let rhs = a.exp().unwrap().mul(&b.exp().unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn truncation_is_reported() {
        let s = Series::one(3);
        assert!(matches!(s.coeff(3), Err(Error::Truncation { order: 3, requested: 3 })));
        assert!(Series::one(3).exp().is_err());
    }
}
