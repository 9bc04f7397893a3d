//! Gauss rules from the three-term recurrence of the orthogonal family.
//! Nodes come from the symmetric tridiagonal (Golub–Welsch) eigenproblem,
//! are polished by Newton steps, and the weights are taken from the
//! Christoffel sums so that tiny weights keep their relative accuracy.

use crate::error::{Error, Result};
use crate::numerics::{gamma, ln_gamma};
use crate::rational::{from_f64, qi, to_f64, Q};
use nalgebra::{DMatrix, SymmetricEigen};
use num_traits::One;
use serde::Serialize;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Measure {
    /// `e^{-x²}` on ℝ
    Hermite,
    /// `x^α e^{-x}` on (0, ∞)
    Laguerre { alpha: f64 },
    /// `(1 - x)^α (1 + x)^β` on (-1, 1)
    Jacobi { alpha: f64, beta: f64 },
}

impl Measure {
    /// Parses `hermite`, `laguerre:<α>` or `jacobi:<α>,<β>`.
    pub fn parse(s: &str) -> Result<Self> {
        let num = |t: &str| crate::rational::parse_q(t).map(|q| to_f64(&q));
        match s.split_once(':') {
            None if s == "hermite" => Ok(Measure::Hermite),
            Some(("laguerre", a)) => Ok(Measure::Laguerre { alpha: num(a)? }),
            Some(("jacobi", ab)) => {
                let (a, b) = ab
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("jacobi measure needs two parameters: {s:?}")))?;
                Ok(Measure::Jacobi { alpha: num(a)?, beta: num(b)? })
            }
            _ => Err(Error::Parse(format!("unknown measure {s:?}"))),
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Measure::Hermite => true,
            Measure::Laguerre { alpha } => alpha > -1.0,
            Measure::Jacobi { alpha, beta } => alpha > -1.0 && beta > -1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Parameter(format!("measure parameters must exceed -1: {self:?}")))
        }
    }

    /// Total mass `∫ dμ`.
    pub fn mass(&self) -> f64 {
        match *self {
            Measure::Hermite => PI.sqrt(),
            Measure::Laguerre { alpha } => gamma(alpha + 1.0),
            Measure::Jacobi { alpha, beta } => {
                let beta_fn = if alpha == 0.0 {
                    1.0 / (beta + 1.0)
                } else if beta == 0.0 {
                    1.0 / (alpha + 1.0)
                } else if alpha + beta < 150.0 {
                    gamma(alpha + 1.0) * gamma(beta + 1.0) / gamma(alpha + beta + 2.0)
                } else {
                    (ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0) - ln_gamma(alpha + beta + 2.0)).exp()
                };
                2f64.powf(alpha + beta + 1.0) * beta_fn
            }
        }
    }

    /// Monic recurrence coefficients `(a_k, b_k)`, `k < n`, with
    /// `p_{k+1} = (x - a_k) p_k - b_k p_{k-1}` (and `b_0` unused).
    pub fn recurrence(&self, n: usize) -> Result<(Vec<f64>, Vec<f64>)> {
        self.validate()?;
        let mut a = Vec::with_capacity(n);
        let mut b = Vec::with_capacity(n);
        match *self {
            Measure::Hermite => {
                for k in 0..n {
                    a.push(0.0);
                    b.push(k as f64 / 2.0);
                }
            }
            Measure::Laguerre { alpha } => {
                for k in 0..n {
                    let kf = k as f64;
                    a.push(2.0 * kf + alpha + 1.0);
                    b.push(kf * (kf + alpha));
                }
            }
            Measure::Jacobi { alpha, beta } => {
                // exact rational arithmetic, rounded once per coefficient
                let (al, be) = (from_f64(alpha)?, from_f64(beta)?);
                let s = &al + &be;
                for k in 0..n {
                    let kq = qi(k as i64);
                    let t = qi(2) * &kq + &s;
                    let ak = if k == 0 {
                        (&be - &al) / (&s + qi(2))
                    } else {
                        (&be * &be - &al * &al) / (&t * (&t + qi(2)))
                    };
                    let bk = match k {
                        0 => Q::one(),
                        1 => qi(4) * (&al + qi(1)) * (&be + qi(1)) / ((&s + qi(2)) * (&s + qi(2)) * (&s + qi(3))),
                        _ => {
                            qi(4) * &kq * (&kq + &al) * (&kq + &be) * (&kq + &s)
                                / (&t * &t * (&t + qi(1)) * (&t - qi(1)))
                        }
                    };
                    a.push(to_f64(&ak));
                    b.push(to_f64(&bk));
                }
            }
        }
        Ok((a, b))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GaussRule {
    pub measure: Measure,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
}

/// Orthonormal values `p̂_0..p̂_n` at `x` plus the derivative of `p̂_n`.
fn orthonormal_eval(a: &[f64], b: &[f64], mass: f64, x: f64, n: usize) -> (Vec<f64>, f64) {
    let mut p = Vec::with_capacity(n + 1);
    let (mut pm1, mut dm1) = (0.0, 0.0);
    let mut pk = 1.0 / mass.sqrt();
    let mut dk = 0.0;
    p.push(pk);
    for k in 0..n {
        let sb_next = b[k + 1].sqrt();
        let sb = if k == 0 { 0.0 } else { b[k].sqrt() };
        let pn = ((x - a[k]) * pk - sb * pm1) / sb_next;
        let dn = (pk + (x - a[k]) * dk - sb * dm1) / sb_next;
        pm1 = pk;
        dm1 = dk;
        pk = pn;
        dk = dn;
        p.push(pk);
    }
    (p, dk)
}

fn build_rule(measure: Measure, n: usize) -> Result<GaussRule> {
    if n == 0 {
        return Err(Error::Parameter("a Gauss rule needs at least one node".into()));
    }
    let (a, b) = measure.recurrence(n + 1)?;
    let mass = measure.mass();
    let jac = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            a[i]
        } else if i + 1 == j {
            b[j].sqrt()
        } else if j + 1 == i {
            b[i].sqrt()
        } else {
            0.0
        }
    });
    let mut nodes: Vec<f64> = SymmetricEigen::new(jac).eigenvalues.iter().copied().collect();
    nodes.sort_by(|x, y| x.partial_cmp(y).unwrap());
    for i in 0..n {
        let gap = [i.checked_sub(1).map(|j| nodes[i] - nodes[j]), nodes.get(i + 1).map(|y| y - nodes[i])]
            .into_iter()
            .flatten()
            .fold(f64::INFINITY, f64::min);
        let mut x = nodes[i];
        for _ in 0..3 {
            let (p, dp) = orthonormal_eval(&a, &b, mass, x, n);
            let step = p[n] / dp;
            if !step.is_finite() || step.abs() > 0.1 * gap {
                break;
            }
            x -= step;
        }
        nodes[i] = x;
    }
    let weights: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            let (p, _) = orthonormal_eval(&a, &b, mass, x, n);
            1.0 / p[..n].iter().map(|v| v * v).sum::<f64>()
        })
        .collect();
    if weights.iter().any(|w| !w.is_finite() || *w <= 0.0) {
        return Err(Error::Numeric(format!("non-positive Gauss weight for {measure:?}, n = {n}")));
    }
    Ok(GaussRule { measure, nodes, weights })
}

type RuleKey = (u8, u64, u64, usize);

fn key(measure: &Measure, n: usize) -> RuleKey {
    match *measure {
        Measure::Hermite => (0, 0, 0, n),
        Measure::Laguerre { alpha } => (1, alpha.to_bits(), 0, n),
        Measure::Jacobi { alpha, beta } => (2, alpha.to_bits(), beta.to_bits(), n),
    }
}

/// `N`-point Gauss rule for `measure`; rules are cached and immutable.
pub fn gauss_rule(measure: Measure, n: usize) -> Result<Arc<GaussRule>> {
    static CACHE: OnceLock<Mutex<HashMap<RuleKey, Arc<GaussRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let k = key(&measure, n);
    if let Some(r) = cache.lock().unwrap().get(&k) {
        return Ok(r.clone());
    }
    let rule = Arc::new(build_rule(measure, n)?);
    cache.lock().unwrap().insert(k, rule.clone());
    Ok(rule)
}

/// `∫_0^δ s^b g(s) ds` by an `n`-point Gauss–Jacobi rule mapped to `[0, δ]`.
pub fn jacobi_endpoint(b: f64, delta: f64, n: usize, g: impl Fn(f64) -> f64) -> Result<f64> {
    let rule = gauss_rule(Measure::Jacobi { alpha: 0.0, beta: b }, n)?;
    let half = 0.5 * delta;
    let sum: f64 = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(&x, &w)| w * g(half * (1.0 + x)))
        .sum();
    Ok(half.powf(b + 1.0) * sum)
}
