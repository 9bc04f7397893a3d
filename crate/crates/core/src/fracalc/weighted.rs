use crate::error::{Error, Result};
use crate::quadrature::{Func, TailHint};
use crate::weights::WeightSpec;

/// A function `u` on the domain of a weight spec, stored through whichever
/// conjugate is natural for the operator applied to it.
#[derive(Clone, Debug)]
pub enum Weighted {
    /// `u = ℰ · v`; left-sided operators act on `v` directly.
    Left(Func),
    /// `u = ℰ^{-1} · w`; right-sided operators act on `w` directly.
    Right(Func),
    /// `u` itself. `left` describes the tail of `ℰ^{-1}u` towards -∞ and
    /// `right` the tail of `ℰu` towards +∞.
    Direct { u: Func, left: TailHint, right: TailHint },
}

impl Weighted {
    pub fn value(&self, spec: &WeightSpec, x: f64) -> Result<f64> {
        match self {
            Weighted::Left(v) => Ok(spec.e(x)? * v.eval(x)),
            Weighted::Right(w) => Ok(spec.e_inv(x)? * w.eval(x)),
            Weighted::Direct { u, .. } => {
                spec.e(x)?;
                Ok(u.eval(x))
            }
        }
    }

    /// `ℰ^{-1} u` as a function on the line. Points outside the domain
    /// evaluate to NaN, which the integrators report as an error.
    pub fn left_conjugate(&self, spec: &WeightSpec) -> Result<Func> {
        match self {
            Weighted::Left(v) => Ok(v.clone()),
            Weighted::Direct { u, left, .. } => {
                let (u, s) = (u.clone(), spec.clone());
                Ok(Func::new(
                    move |t| s.e_inv(t).map(|e| e * u.eval(t)).unwrap_or(f64::NAN),
                    *left,
                    TailHint::Unknown,
                    "left conjugate",
                ))
            }
            Weighted::Right(_) => Err(Error::Contract(
                "left-sided operator applied to a right-conjugated function".into(),
            )),
        }
    }

    /// `ℰ u` as a function on the line.
    pub fn right_conjugate(&self, spec: &WeightSpec) -> Result<Func> {
        match self {
            Weighted::Right(w) => Ok(w.clone()),
            Weighted::Direct { u, right, .. } => {
                let (u, s) = (u.clone(), spec.clone());
                Ok(Func::new(
                    move |t| s.e(t).map(|e| e * u.eval(t)).unwrap_or(f64::NAN),
                    TailHint::Unknown,
                    *right,
                    "right conjugate",
                ))
            }
            Weighted::Left(_) => Err(Error::Contract(
                "right-sided operator applied to a left-conjugated function".into(),
            )),
        }
    }
}
