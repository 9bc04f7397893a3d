//! Gauss rules against exact moments computed independently by
//! integration-by-parts recurrences in rational arithmetic.

use fracinv::numerics::gamma;
use fracinv::quadrature::{gauss_rule, Measure};
use fracinv::rational::{q, qi, to_f64, Q};
use proptest::prelude::*;

/// `(M_k / M_0, ∫|x|^k dμ / M_0)` for `k ≤ k_max`, exact, plus `M_0`.
struct Moments {
    ratio: Vec<Q>,
    abs_ratio: Vec<Q>,
    mass: f64,
}

fn hermite(k_max: usize) -> Moments {
    // ∫|x|^k e^{-x²} = Γ((k+1)/2); even ratios (k-1)!!/2^{k/2}
    let mut ratio = vec![qi(1), qi(0)];
    for k in 2..=k_max {
        let prev = ratio[k - 2].clone();
        ratio.push(prev * q(k as i64 - 1, 2));
    }
    ratio.truncate(k_max + 1);
    let abs_ratio = (0..=k_max)
        .map(|k| if k % 2 == 0 { ratio[k].clone() } else { Q::from_float(gamma((k as f64 + 1.0) / 2.0) / gamma(0.5)).unwrap() })
        .collect();
    Moments { ratio, abs_ratio, mass: std::f64::consts::PI.sqrt() }
}

fn laguerre(alpha: &Q, k_max: usize) -> Moments {
    let mut ratio = vec![qi(1)];
    for k in 1..=k_max {
        let next = &ratio[k - 1] * (alpha + qi(k as i64));
        ratio.push(next);
    }
    Moments { abs_ratio: ratio.clone(), ratio, mass: gamma(to_f64(alpha) + 1.0) }
}

fn jacobi(alpha: &Q, beta: &Q, k_max: usize) -> Moments {
    // d/dx[x^k (1-x²) w] integrates to zero:
    // (k + 2 + α + β) M_{k+1} = k M_{k-1} + (β - α) M_k
    let mut ratio = vec![qi(1)];
    for k in 0..=k_max {
        let prev = if k == 0 { qi(0) } else { ratio[k - 1].clone() };
        let next = (qi(k as i64) * prev + (beta - alpha) * &ratio[k]) / (qi(k as i64 + 2) + alpha + beta);
        ratio.push(next);
    }
    // |x|^k ≥ |x|^{k+1} on [-1, 1]: use the next even moment as a (smaller) reference
    let abs_ratio = (0..=k_max).map(|k| ratio[k + k % 2].clone()).collect();
    ratio.truncate(k_max + 1);
    let (a, b) = (to_f64(alpha), to_f64(beta));
    let mass = 2f64.powf(a + b + 1.0) * gamma(a + 1.0) * gamma(b + 1.0) / gamma(a + b + 2.0);
    Moments { ratio, abs_ratio, mass }
}

fn cases(k_max: usize) -> Vec<(Measure, Moments)> {
    vec![
        (Measure::Hermite, hermite(k_max)),
        (Measure::Laguerre { alpha: 0.0 }, laguerre(&qi(0), k_max)),
        (Measure::Laguerre { alpha: 0.5 }, laguerre(&q(1, 2), k_max)),
        (Measure::Laguerre { alpha: -1.0 / 3.0 }, laguerre(&q(-1, 3), k_max)),
        (Measure::Jacobi { alpha: 0.0, beta: 0.0 }, jacobi(&qi(0), &qi(0), k_max)),
        (Measure::Jacobi { alpha: 0.5, beta: 0.5 }, jacobi(&q(1, 2), &q(1, 2), k_max)),
        (Measure::Jacobi { alpha: 0.25, beta: -0.5 }, jacobi(&q(1, 4), &q(-1, 2), k_max)),
    ]
}

#[test]
fn monomials_up_to_degree_2n_minus_1() {
    for n in [8usize, 16, 32, 64] {
        for (measure, m) in cases(2 * n - 1) {
            let rule = gauss_rule(measure, n).unwrap();
            let total: f64 = rule.weights.iter().sum();
            assert!((total - m.mass).abs() <= 1e-12 * m.mass, "{measure:?} N={n}: mass {total}");
            for k in 0..2 * n {
                let got = rule.integrate(|x| x.powi(k as i32)) / m.mass;
                let want = to_f64(&m.ratio[k]);
                let scale = to_f64(&m.abs_ratio[k]);
                assert!((got - want).abs() <= 1e-10 * scale, "{measure:?} N={n} k={k}: {got} vs {want}");
            }
        }
    }
}

#[test]
fn small_rule_examples() {
    let h = gauss_rule(Measure::Hermite, 1).unwrap();
    assert_eq!(h.nodes[0], 0.0);
    assert!((h.weights[0] - std::f64::consts::PI.sqrt()).abs() < 1e-15);
    let l = gauss_rule(Measure::Laguerre { alpha: 0.0 }, 1).unwrap();
    assert!((l.nodes[0] - 1.0).abs() < 1e-15 && (l.weights[0] - 1.0).abs() < 1e-15);
    let h20 = gauss_rule(Measure::Hermite, 20).unwrap();
    let v = h20.integrate(|x| x * x);
    let want = std::f64::consts::PI.sqrt() / 2.0;
    assert!((v - want).abs() <= 1e-12 * want);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn random_polynomials_integrate_exactly(
        n in 1usize..24,
        which in 0usize..7,
        coeffs in proptest::collection::vec((-20i64..20, 1i64..9), 1..48),
    ) {
        let (measure, m) = cases(47).swap_remove(which);
        let deg = (coeffs.len() - 1).min(2 * n - 1);
        let c: Vec<Q> = coeffs[..=deg].iter().map(|&(a, b)| q(a, b)).collect();
        let exact: Q = c.iter().zip(&m.ratio).map(|(a, r)| a * r).sum();
        let scale: f64 = c.iter().zip(&m.abs_ratio).map(|(a, r)| to_f64(a).abs() * to_f64(r)).sum();
        let cf: Vec<f64> = c.iter().map(to_f64).collect();
        let rule = gauss_rule(measure, n).unwrap();
        let got = rule.integrate(|x| cf.iter().rev().fold(0.0, |acc, a| acc * x + a)) / m.mass;
        prop_assert!((got - to_f64(&exact)).abs() <= 1e-10 * scale.max(1e-300), "{:?} N={} deg={}", measure, n, deg);
    }
}
