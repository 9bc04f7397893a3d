//! Finite expansions in a starred basis and the spectral multipliers acting
//! on them.

use super::basis::Basis;
use crate::error::{Error, Result};
use crate::quadrature::{gauss_rule, integrate, AdaptiveConfig};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct Expansion {
    pub basis: Basis,
    pub coeffs: Vec<f64>,
    pub norms: Vec<f64>,
}

impl Expansion {
    pub fn new(basis: Basis, coeffs: Vec<f64>) -> Result<Self> {
        basis.validate()?;
        let norms: Vec<f64> = (0..coeffs.len()).map(|n| basis.norm_sq(n)).collect();
        if norms.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
            return Err(Error::Numeric("basis norm is not positive".into()));
        }
        Ok(Expansion { basis, coeffs, norms })
    }

    pub fn mode(basis: Basis, n: usize, c: f64) -> Result<Self> {
        let mut coeffs = vec![0.0; n + 1];
        coeffs[n] = c;
        Self::new(basis, coeffs)
    }

    /// Random coefficients scaled so that every mode has comparable norm.
    pub fn random(basis: Basis, modes: usize, rng: &mut impl Rng) -> Result<Self> {
        let coeffs = (0..modes)
            .map(|n| rng.sample::<f64, _>(StandardNormal) / basis.norm_sq(n).sqrt())
            .collect();
        Self::new(basis, coeffs)
    }

    fn with_coeffs(&self, coeffs: Vec<f64>) -> Result<Self> {
        Self::new(self.basis, coeffs)
    }

    /// `‖f‖` by Parseval.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().zip(&self.norms).map(|(c, n)| c * c * n).sum::<f64>().sqrt()
    }

    /// `F = f / w = Σ c_n P_n` at `x`.
    pub fn conj_value(&self, x: f64) -> f64 {
        if self.coeffs.is_empty() {
            return 0.0;
        }
        let p = self.basis.polys(self.coeffs.len() - 1, x);
        self.coeffs.iter().zip(&p).map(|(c, p)| c * p).sum()
    }

    pub fn value(&self, x: f64) -> f64 {
        self.basis.weight(x) * self.conj_value(x)
    }

    /// `‖f‖` by Gauss quadrature in the classical measure.
    pub fn quad_norm(&self) -> Result<f64> {
        let rule = gauss_rule(self.basis.measure(), self.coeffs.len().max(1) + 2)?;
        Ok((self.basis.reduction_constant() * rule.integrate(|x| self.conj_value(x).powi(2))).sqrt())
    }

    /// Coefficients of `e^{-tL} f`, i.e. `c_n e^{-t Λ_n}`.
    pub fn heat(&self, t: f64) -> Result<Self> {
        heat_semigroup(self, t)
    }
}

pub fn heat_semigroup(e: &Expansion, t: f64) -> Result<Expansion> {
    if !(t >= 0.0) {
        return Err(Error::Parameter(format!("semigroup time must be nonnegative, got {t}")));
    }
    if t == 0.0 {
        return Ok(e.clone());
    }
    let coeffs = e
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| c * (-t * e.basis.eigenvalue(n)).exp())
        .collect();
    e.with_coeffs(coeffs)
}

/// 200 logarithmically spaced times on `[1e-6, 1e2]`.
pub fn default_t_grid() -> Vec<f64> {
    let (lo, hi, n) = (-6.0f64, 2.0f64, 200);
    (0..n).map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / (n - 1) as f64)).collect()
}

/// `sup_t |F_t(x)|` for the conjugate `F_t = e^{-tL}f / w`, including `t = 0`.
fn maximal_conj(e: &Expansion, x: f64, t_grid: &[f64]) -> f64 {
    if e.coeffs.is_empty() {
        return 0.0;
    }
    let p = e.basis.polys(e.coeffs.len() - 1, x);
    let at = |t: f64| -> f64 {
        e.coeffs
            .iter()
            .zip(&p)
            .enumerate()
            .map(|(n, (c, p))| c * p * (-t * e.basis.eigenvalue(n)).exp())
            .sum::<f64>()
            .abs()
    };
    t_grid.iter().fold(at(0.0), |m, &t| m.max(at(t)))
}

/// `ℳf(x) = sup_t |e^{-tL} f(x)|` over the grid and `t = 0`.
pub fn maximal_op(e: &Expansion, x: f64, t_grid: &[f64]) -> f64 {
    e.basis.weight(x) * maximal_conj(e, x, t_grid)
}

/// `‖ℳf‖ / ‖f‖` with the outer norm taken by Gauss quadrature.
pub fn maximal_l2_ratio(e: &Expansion, t_grid: &[f64]) -> Result<f64> {
    let norm = e.norm();
    if norm == 0.0 {
        return Ok(0.0);
    }
    let rule = gauss_rule(e.basis.measure(), 2 * e.coeffs.len() + 40)?;
    let m2 = e.basis.reduction_constant() * rule.integrate(|x| maximal_conj(e, x, t_grid).powi(2));
    Ok(m2.sqrt() / norm)
}

fn require_gauss(e: &Expansion) -> Result<()> {
    if e.basis == Basis::InvGauss {
        Ok(())
    } else {
        Err(Error::Parameter("Riesz transforms are defined here for the inverse Gaussian basis".into()))
    }
}

/// `R f = ∂_x Õ^{-1/2} f`, using `∂_x H*_n = -H*_{n+1}`.
pub fn riesz(e: &Expansion) -> Result<Expansion> {
    require_gauss(e)?;
    let mut out = vec![0.0; e.coeffs.len() + 1];
    for (n, c) in e.coeffs.iter().enumerate() {
        out[n + 1] = -c / e.basis.eigenvalue(n).sqrt();
    }
    e.with_coeffs(out)
}

/// `R* f = (∂_x + 2x) Õ^{-1/2} f`, using `(∂_x + 2x) H*_n = 2n H*_{n-1}`.
pub fn riesz_star(e: &Expansion) -> Result<Expansion> {
    require_gauss(e)?;
    let mut out = vec![0.0; e.coeffs.len().saturating_sub(1).max(1)];
    for (n, c) in e.coeffs.iter().enumerate().skip(1) {
        out[n - 1] = 2.0 * n as f64 * c / e.basis.eigenvalue(n).sqrt();
    }
    e.with_coeffs(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct GReport {
    pub closed_form: f64,
    pub quadrature: f64,
    pub rel_diff: f64,
}

/// `‖G f‖` for `G f(x) = (∫_0^∞ |t ∂_t e^{-tL} f(x)|² dt/t)^{1/2}`; the
/// closed form is `‖f‖ / 2`, cross-checked by integrating
/// `t ‖∂_t e^{-tL} f‖²` over `t`.
pub fn g_function_norm(e: &Expansion) -> Result<GReport> {
    let closed_form = 0.5 * e.norm();
    if closed_form == 0.0 {
        return Ok(GReport { closed_form, quadrature: 0.0, rel_diff: 0.0 });
    }
    let rule = gauss_rule(e.basis.measure(), e.coeffs.len() + 2)?;
    let kappa = e.basis.reduction_constant();
    let lams: Vec<f64> = (0..e.coeffs.len()).map(|n| e.basis.eigenvalue(n)).collect();
    let polys: Vec<Vec<f64>> = rule.nodes.iter().map(|&x| e.basis.polys(e.coeffs.len() - 1, x)).collect();
    let speed_sq = |t: f64| -> f64 {
        let d: Vec<f64> = e.coeffs.iter().zip(&lams).map(|(c, l)| -c * l * (-t * l).exp()).collect();
        kappa
            * rule
                .weights
                .iter()
                .zip(&polys)
                .map(|(w, p)| w * d.iter().zip(p).map(|(a, b)| a * b).sum::<f64>().powi(2))
                .sum::<f64>()
    };
    let lmin = lams.iter().copied().filter(|&l| l > 0.0).fold(f64::INFINITY, f64::min);
    let lmax = lams.iter().copied().fold(0.0, f64::max);
    if !lmin.is_finite() || lams.iter().zip(&e.coeffs).any(|(&l, &c)| l <= 0.0 && c != 0.0) {
        return Err(Error::Parameter("g-function needs strictly positive eigenvalues".into()));
    }
    let cfg = AdaptiveConfig { abs_tol: 0.0, rel_tol: 1e-12, max_panels: 4000 };
    // t = e^σ: ∫ t² ‖∂_t u‖² dσ
    let (lo, hi) = ((1e-12 / lmax).ln(), (80.0 / lmin).ln());
    let q = integrate(|s| (2.0 * s).exp() * speed_sq(s.exp()), lo, hi, &cfg)?.value;
    let quadrature = q.sqrt();
    let rel_diff = (quadrature - closed_form).abs() / closed_form;
    if rel_diff > 1e-8 {
        return Err(Error::Consistency(format!(
            "g-function quadrature {quadrature} disagrees with closed form {closed_form}"
        )));
    }
    Ok(GReport { closed_form, quadrature, rel_diff })
}

/// A function handed to [`inner_product`], tagged by its coordinates.
pub enum Input<'a> {
    /// `F` with `f = w F`.
    Conjugated(&'a dyn Fn(f64) -> f64),
    /// `f` itself.
    Raw(&'a dyn Fn(f64) -> f64),
}

/// `⟨f, g⟩` in the inverse measure, reduced to the classical one.
pub fn inner_product(f: Input, g: Input, basis: &Basis, nodes: usize) -> Result<f64> {
    let (Input::Conjugated(f), Input::Conjugated(g)) = (f, g) else {
        return Err(Error::Contract("inner products need conjugated inputs f = w F".into()));
    };
    let rule = gauss_rule(basis.measure(), nodes)?;
    Ok(basis.reduction_constant() * rule.integrate(|x| f(x) * g(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{recurrence, Base, Family, PowerForm};
    use crate::rational::qi;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gauss_norms_and_gram_matrix() {
        let b = Basis::InvGauss;
        let rule = gauss_rule(b.measure(), 30).unwrap();
        for m in 0..=20 {
            for n in 0..=m {
                let g = b.reduction_constant() * rule.integrate(|x| {
                    let p = b.polys(20, x);
                    p[m] * p[n]
                });
                let scale = (b.norm_sq(m) * b.norm_sq(n)).sqrt();
                if m == n {
                    let mut want = std::f64::consts::PI;
                    for k in 1..=n {
                        want *= 2.0 * k as f64;
                    }
                    assert!((g - want).abs() <= 1e-10 * want, "{n}: {g} vs {want}");
                } else {
                    assert!(g.abs() <= 1e-10 * scale, "({m},{n}) {g}");
                }
            }
        }
    }

    #[test]
    fn gram_by_direct_integration_in_inverse_measure() {
        // integrand ∝ e^{-x²} H_m H_n, computed directly without the reduction
        let b = Basis::InvGauss;
        let cfg = AdaptiveConfig { abs_tol: 0.0, rel_tol: 1e-13, max_panels: 4000 };
        for (m, n) in [(3, 3), (2, 5), (6, 6)] {
            let f = |x: f64| {
                let p = b.polys(6, x);
                b.weight(x) * p[m] * b.weight(x) * p[n] * b.inverse_density(x)
            };
            let v = integrate(f, -12.0, 12.0, &cfg).unwrap().value;
            let want = if m == n { b.norm_sq(n) } else { 0.0 };
            assert!((v - want).abs() < 1e-9 * b.norm_sq(m).max(1.0), "({m},{n}): {v}");
        }
    }

    #[test]
    fn laguerre_and_jacobi_norms_match_quadrature() {
        for b in [
            Basis::InvLaguerre { alpha: 0.5 },
            Basis::InvLaguerre { alpha: -1.0 / 3.0 },
            Basis::InvJacobi { alpha: 0.5, beta: 0.5 },
            Basis::InvJacobi { alpha: 1.0 / 3.0, beta: 0.25 },
        ] {
            let rule = gauss_rule(b.measure(), 24).unwrap();
            for n in 0..=15 {
                let g = rule.integrate(|x| b.polys(15, x)[n].powi(2));
                assert!((g - b.norm_sq(n)).abs() < 1e-10 * b.norm_sq(n), "{b:?} {n}");
            }
        }
        // Γ(α+2) for the first Laguerre mode at α = 1/2
        let b = Basis::InvLaguerre { alpha: 0.5 };
        assert!((b.norm_sq(1) - crate::numerics::gamma(2.5)).abs() < 1e-14);
    }

    #[test]
    fn float_recurrences_match_exact_polynomials() {
        use crate::rational::q;
        let cases = [
            (Basis::InvGauss, Family::Hermite),
            (Basis::InvLaguerre { alpha: 0.5 }, Family::Laguerre { alpha: q(1, 2) }),
            (Basis::InvJacobi { alpha: 0.25, beta: 0.75 }, Family::Jacobi { alpha: q(1, 4), beta: q(3, 4) }),
        ];
        for (b, fam) in cases {
            let exact = recurrence(&fam, 10).unwrap();
            for x in [-0.7, 0.2, 0.9] {
                let p = b.polys(10, x);
                for n in 0..=10 {
                    let e = exact[n].eval_f64(x);
                    assert!((p[n] - e).abs() <= 1e-12 * e.abs().max(1.0), "{b:?} n={n}");
                }
            }
        }
    }

    #[test]
    fn ladder_identities_exact() {
        let hs = recurrence(&Family::Hermite, 12).unwrap();
        for n in 0..12 {
            let f = PowerForm::new(Base::Gauss { sign: -1 }, hs[n].clone());
            let d = f.derivative();
            let want = PowerForm::new(Base::Gauss { sign: -1 }, -&hs[n + 1]);
            assert!(d.sub(&want).unwrap().is_zero());
            if n > 0 {
                let x = crate::exactpoly::Poly::new(vec![qi(0), qi(2)]);
                let lowered = d.add(&f.mul_poly(&x)).unwrap();
                let want = PowerForm::new(Base::Gauss { sign: -1 }, hs[n - 1].scale(&qi(2 * n as i64)));
                assert!(lowered.sub(&want).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn riesz_norm_ratios() {
        for n in 0..=15 {
            let h = Expansion::mode(Basis::InvGauss, n, 1.0).unwrap();
            let r = riesz(&h).unwrap();
            let rs = riesz_star(&h).unwrap();
            let base = h.norm().powi(2);
            assert!((r.norm().powi(2) / base - 1.0).abs() < 1e-13);
            assert!((rs.norm().powi(2) / base - n as f64 / (n as f64 + 1.0)).abs() < 1e-13);
        }
        assert!(riesz(&Expansion::mode(Basis::InvLaguerre { alpha: 0.5 }, 2, 1.0).unwrap()).is_err());
    }

    #[test]
    fn riesz_matches_differentiation_pointwise() {
        // R f = ∂_x Õ^{-1/2} f checked by differentiating the synthesized function
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = Expansion::random(Basis::InvGauss, 6, &mut rng).unwrap();
        let half: Vec<f64> = f.coeffs.iter().enumerate().map(|(n, c)| c / (2.0 * n as f64 + 2.0).sqrt()).collect();
        let g = Expansion::new(Basis::InvGauss, half).unwrap();
        let r = riesz(&f).unwrap();
        let h = 1e-4;
        for x in [-1.3, 0.0, 0.4, 2.1] {
            let fd = (g.value(x + h) - g.value(x - h)) / (2.0 * h);
            assert!((fd - r.value(x)).abs() < 1e-6 * (1.0 + fd.abs()), "x={x}");
        }
    }

    #[test]
    fn semigroup_rejects_negative_time_and_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = Expansion::random(Basis::InvGauss, 10, &mut rng).unwrap();
        assert!(heat_semigroup(&f, -0.1).is_err());
        for t in [0.01, 0.3, 2.0] {
            assert!(heat_semigroup(&f, t).unwrap().norm() <= (-2.0 * t).exp() * f.norm() * (1.0 + 1e-14));
        }
        // composition
        let a = heat_semigroup(&heat_semigroup(&f, 0.2).unwrap(), 0.3).unwrap();
        let b = heat_semigroup(&f, 0.5).unwrap();
        for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
            assert!((x - y).abs() <= 1e-15 * y.abs().max(1e-300) + 1e-300);
        }
    }

    #[test]
    fn g_function_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for b in [Basis::InvGauss, Basis::InvLaguerre { alpha: 0.5 }, Basis::InvJacobi { alpha: 0.5, beta: 0.25 }] {
            let f = Expansion::random(b, 8, &mut rng).unwrap();
            let g = g_function_norm(&f).unwrap();
            assert!(g.rel_diff < 1e-8, "{b:?} {g:?}");
        }
    }

    #[test]
    fn maximal_operator_dominates_and_is_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let grid = default_t_grid();
        let f = Expansion::random(Basis::InvGauss, 10, &mut rng).unwrap();
        for x in [-1.0, 0.0, 0.5] {
            assert!(maximal_op(&f, x, &grid) >= f.value(x).abs());
        }
        let r = maximal_l2_ratio(&f, &grid).unwrap();
        assert!((1.0..=3.0).contains(&r), "{r}");
    }

    #[test]
    fn inner_product_contract() {
        let b = Basis::InvGauss;
        let one = |_: f64| 1.0;
        assert!(inner_product(Input::Raw(&one), Input::Conjugated(&one), &b, 10).is_err());
        let v = inner_product(Input::Conjugated(&one), Input::Conjugated(&one), &b, 10).unwrap();
        assert!((v - std::f64::consts::PI).abs() < 1e-13);
    }

    #[test]
    fn transference_is_an_isometry() {
        // multiplication by e^{-x²} maps L²(e^{-x²}) isometrically into L²(e^{x²})
        let cfg = AdaptiveConfig { abs_tol: 0.0, rel_tol: 1e-12, max_panels: 4000 };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let c: Vec<f64> = (0..5).map(|_| rand::Rng::random_range(&mut rng, -1.0..1.0)).collect();
            let p = |x: f64| c.iter().rev().fold(0.0, |acc, a| acc * x + a);
            let lhs = integrate(|x| (p(x) * (-x * x).exp()).powi(2) * (x * x).exp(), -15.0, 15.0, &cfg).unwrap().value;
            let rhs = gauss_rule(crate::quadrature::Measure::Hermite, 8).unwrap().integrate(|x| p(x).powi(2));
            assert!((lhs - rhs).abs() < 1e-10 * rhs);
        }
    }

    proptest::proptest! {
        #[test]
        fn parseval(seed in 0u64..500, modes in 1usize..12) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for b in [Basis::InvGauss, Basis::InvLaguerre { alpha: 0.3 }, Basis::InvJacobi { alpha: 0.2, beta: 0.7 }] {
                let f = Expansion::random(b, modes, &mut rng).unwrap();
                let (a, q) = (f.norm(), f.quad_norm().unwrap());
                proptest::prop_assert!((a - q).abs() <= 1e-10 * a);
            }
        }
    }
}
