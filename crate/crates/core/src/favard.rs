//! Moment functionals for the monic inverse families.
//!
//! The monic polynomials satisfy `Q_{n+1} = (x - c_{n+1}) Q_n - λ_{n+1} Q_{n-1}`
//! with every `λ_n ≠ 0`, so there is a unique functional `L` with
//! `L[1] = λ_1` (the first eigenvalue of the family's operator) making them
//! orthogonal. `L` is quasi-definite, not positive.

use crate::error::{Error, Result};
use crate::exactpoly::{recurrence, Family, Poly};
use crate::rational::{fmt_q, qi, Q};
use num_traits::{One, Zero};
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct MomentFunctional {
    pub family: Family,
    /// `c_1, c_2, …`
    pub c: Vec<Q>,
    /// `λ_1, λ_2, …`; `λ_1` is the normalisation `L[1]`.
    pub lam: Vec<Q>,
    /// Monic `Q_0, …, Q_degree`.
    pub polys: Vec<Poly>,
}

fn require_inverse(family: &Family) -> Result<()> {
    match family {
        Family::InvHermite | Family::InvLaguerre { .. } | Family::InvJacobi { .. } => Ok(()),
        _ => Err(Error::Parameter("moment functionals are built for the inverse families".into())),
    }
}

/// Builds `Q_0 … Q_degree` and reads `(c_n, λ_n)` off them exactly.
pub fn monic_recurrence(family: &Family, degree: usize) -> Result<MomentFunctional> {
    require_inverse(family)?;
    let raw = recurrence(family, degree)?;
    let mut polys = Vec::with_capacity(raw.len());
    for (n, p) in raw.iter().enumerate() {
        if p.degree() != Some(n) {
            return Err(Error::Parameter(format!("degree of the n = {n} polynomial collapses; no monic form")));
        }
        polys.push(p.monic().expect("nonzero polynomial"));
    }
    // 2, 1 and α+β-2 for the three families
    let lam1 = family.eigenvalue(1);
    if lam1.is_zero() {
        return Err(Error::Parameter("first eigenvalue vanishes, L[1] = 0".into()));
    }
    let mut c = Vec::with_capacity(degree);
    let mut lam = vec![lam1];
    let x = Poly::new(vec![qi(0), qi(1)]);
    for n in 0..degree {
        // R = x Q_n - Q_{n+1} = c_{n+1} Q_n + λ_{n+1} Q_{n-1}
        let r = &(&x * &polys[n]) - &polys[n + 1];
        let cn = r.coeff(n);
        let rest = &r - &polys[n].scale(&cn);
        if n == 0 {
            if !rest.is_zero() {
                return Err(Error::Consistency("Q_1 is not x - c_1".into()));
            }
        } else {
            let l = rest.coeff(n - 1);
            if !(&rest - &polys[n - 1].scale(&l)).is_zero() {
                return Err(Error::Consistency(format!("no three-term relation at n = {n}")));
            }
            if l.is_zero() {
                return Err(Error::Parameter(format!("λ_{} vanishes; functional is not quasi-definite", n + 1)));
            }
            lam.push(l);
        }
        c.push(cn);
    }
    Ok(MomentFunctional { family: family.clone(), c, lam, polys })
}

impl MomentFunctional {
    pub fn degree(&self) -> usize {
        self.polys.len() - 1
    }

    /// `μ_0 … μ_K` from `L[Q_k] = 0`: `μ_k = -Σ_{j<k} [x^j]Q_k μ_j`.
    pub fn moments(&self, k: usize) -> Result<Vec<Q>> {
        if k > self.degree() {
            return Err(Error::Truncation { order: self.degree(), requested: k });
        }
        let mut mu: Vec<Q> = vec![self.lam[0].clone()];
        for j in 1..=k {
            let s = (0..j).fold(Q::zero(), |acc, i| acc + self.polys[j].coeff(i) * &mu[i]);
            mu.push(-s);
        }
        Ok(mu)
    }

    /// `μ_0 … μ_K` from the recurrence alone: expand `x^k = Σ a_{k,n} Q_n` by
    /// repeated multiplication by `x`, then `L[x^k] = λ_1 a_{k,0}`.
    pub fn moments_by_recurrence(&self, k: usize) -> Result<Vec<Q>> {
        if k > self.c.len() + 1 || k > self.lam.len() + 1 {
            return Err(Error::Truncation { order: self.c.len(), requested: k });
        }
        let mut a: Vec<Q> = vec![Q::one()];
        let mut mu = vec![&self.lam[0] * &a[0]];
        for _ in 1..=k {
            let mut next = vec![Q::zero(); a.len() + 1];
            for (n, an) in a.iter().enumerate() {
                next[n + 1] += an;
                next[n] += an * &self.c[n];
                if n >= 1 {
                    next[n - 1] += an * &self.lam[n];
                }
            }
            a = next;
            mu.push(&self.lam[0] * &a[0]);
        }
        Ok(mu)
    }

    pub fn apply(&self, p: &Poly, mu: &[Q]) -> Result<Q> {
        let d = p.degree().unwrap_or(0);
        if d >= mu.len() {
            return Err(Error::Truncation { order: mu.len().saturating_sub(1), requested: d });
        }
        Ok((0..=d).fold(Q::zero(), |acc, i| acc + p.coeff(i) * &mu[i]))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FavardReport {
    pub family: String,
    pub n: usize,
    pub c: Vec<String>,
    pub lam: Vec<String>,
    pub moments: Vec<String>,
    /// Moments renormalised to `L[1] = 1`.
    pub moments_unit: Vec<String>,
    /// `L[Q_n²]` for `n ≤ N`.
    pub norms: Vec<String>,
    pub routes_agree: bool,
    /// Off-diagonal pairs with `L[Q_m Q_n] ≠ 0`.
    pub off_diagonal_failures: Vec<(usize, usize)>,
    /// `n` where `L[Q_n²] ≠ λ_1⋯λ_{n+1}` or vanishes.
    pub diagonal_failures: Vec<usize>,
}

impl FavardReport {
    pub fn passed(&self) -> bool {
        self.routes_agree && self.off_diagonal_failures.is_empty() && self.diagonal_failures.is_empty()
    }
}

/// Exact orthogonality check for `m, n ≤ N`.
pub fn orthogonality_check(family: &Family, n_max: usize) -> Result<FavardReport> {
    let mf = monic_recurrence(family, 2 * n_max + 1)?;
    let mu = mf.moments(2 * n_max)?;
    let mu2 = mf.moments_by_recurrence(2 * n_max)?;
    let mut off = Vec::new();
    let mut diag = Vec::new();
    let mut norms = Vec::new();
    let mut prod = Q::one();
    for n in 0..=n_max {
        prod *= &mf.lam[n];
        for m in 0..n {
            if !mf.apply(&(&mf.polys[m] * &mf.polys[n]), &mu)?.is_zero() {
                off.push((m, n));
            }
        }
        let v = mf.apply(&(&mf.polys[n] * &mf.polys[n]), &mu)?;
        if v.is_zero() || v != prod {
            diag.push(n);
        }
        norms.push(fmt_q(&v));
    }
    let unit: Vec<String> = mu.iter().map(|m| fmt_q(&(m / &mf.lam[0]))).collect();
    Ok(FavardReport {
        family: family.to_string(),
        n: n_max,
        c: mf.c.iter().take(n_max + 1).map(fmt_q).collect(),
        lam: mf.lam.iter().take(n_max + 2).map(fmt_q).collect(),
        moments: mu.iter().map(fmt_q).collect(),
        moments_unit: unit,
        norms,
        routes_agree: mu == mu2,
        off_diagonal_failures: off,
        diagonal_failures: diag,
    })
}
