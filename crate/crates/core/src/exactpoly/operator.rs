use super::poly::Poly;
use super::powerform::PowerForm;
use crate::error::Result;
use crate::rational::{qi, Q};

/// Second order operator `p2 D² + p1 D + p0` with polynomial coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSpec {
    pub p2: Poly,
    pub p1: Poly,
    pub p0: Poly,
}

impl OperatorSpec {
    pub fn apply(&self, f: &Poly) -> Poly {
        let d1 = f.derivative();
        let d2 = d1.derivative();
        &(&(&self.p2 * &d2) + &(&self.p1 * &d1)) + &(&self.p0 * f)
    }

    pub fn apply_form(&self, f: &PowerForm) -> Result<PowerForm> {
        let d1 = f.derivative();
        let d2 = d1.derivative();
        d2.mul_poly(&self.p2).add(&d1.mul_poly(&self.p1))?.add(&f.mul_poly(&self.p0))
    }

    pub fn scale(&self, c: &Q) -> Self {
        OperatorSpec { p2: self.p2.scale(c), p1: self.p1.scale(c), p0: self.p0.scale(c) }
    }

    /// `D² + 2x D`, diagonal on the inverse Hermite polynomials.
    pub fn inverse_hermite() -> Self {
        OperatorSpec { p2: Poly::one(), p1: Poly::from_ints(&[0, 2]), p0: Poly::zero() }
    }

    /// `x D² + (1 - α + x) D`.
    pub fn inverse_laguerre(alpha: &Q) -> Self {
        OperatorSpec {
            p2: Poly::x(),
            p1: Poly::linear(qi(1) - alpha, qi(1)),
            p0: Poly::zero(),
        }
    }

    /// `(1 - x²) D² + ((α - β) + (α + β - 2) x) D`.
    pub fn inverse_jacobi(alpha: &Q, beta: &Q) -> Self {
        OperatorSpec {
            p2: Poly::from_ints(&[1, 0, -1]),
            p1: Poly::linear(alpha - beta, alpha + beta - qi(2)),
            p0: Poly::zero(),
        }
    }

    /// Ornstein–Uhlenbeck operator `-D² + 2x D`.
    pub fn hermite() -> Self {
        OperatorSpec { p2: Poly::from_ints(&[-1]), p1: Poly::from_ints(&[0, 2]), p0: Poly::zero() }
    }

    /// `x D² + (α + 1 - x) D`.
    pub fn laguerre(alpha: &Q) -> Self {
        OperatorSpec {
            p2: Poly::x(),
            p1: Poly::linear(alpha + qi(1), qi(-1)),
            p0: Poly::zero(),
        }
    }

    /// `(1 - x²) D² + (β - α - (α + β + 2) x) D`.
    pub fn jacobi(alpha: &Q, beta: &Q) -> Self {
        OperatorSpec {
            p2: Poly::from_ints(&[1, 0, -1]),
            p1: Poly::linear(beta - alpha, -(alpha + beta + qi(2))),
            p0: Poly::zero(),
        }
    }
}
