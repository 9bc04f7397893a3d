//! Randomised probes of the maximum principle: if `u >= 0` to the left of
//! `x₀` and `u(x₀) = 0`, then `(𝔇_left)^α u(x₀) <= 0`.

use super::powers::frac_deriv_left;
use super::weighted::Weighted;
use crate::error::Result;
use crate::quadrature::{bump_profile, Func, SingularConfig, TailHint};
use crate::weights::WeightSpec;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct MaxPrincipleReport {
    pub alpha: f64,
    pub point: f64,
    pub trials: usize,
    pub violations: usize,
    /// Largest value of `(𝔇_left)^α u(x₀)` observed.
    pub max_value: f64,
    /// Value for data vanishing on `(-∞, x₀]`; zero up to rounding.
    pub equality_case: f64,
    /// Pairs `u₁ >= u₂` left of `x₀` with `u₁(x₀) = u₂(x₀)` where the
    /// derivatives came out in the wrong order.
    pub comparison_violations: usize,
}

/// Sum of random nonnegative bumps; returns the function and its left edge.
fn random_bumps(rng: &mut ChaCha8Rng, p: f64) -> (Vec<(f64, f64, f64)>, f64) {
    let k = rng.random_range(1..=4);
    let bumps: Vec<(f64, f64, f64)> = (0..k)
        .map(|_| {
            let a = rng.random_range(0.0..2.0);
            let c = p + rng.random_range(-3.0..0.5);
            let w = rng.random_range(0.2..2.0);
            (a, c, w)
        })
        .collect();
    let left = bumps.iter().map(|&(_, c, w)| c - w).fold(f64::INFINITY, f64::min);
    (bumps, left)
}

fn eval_bumps(bumps: &[(f64, f64, f64)], t: f64) -> f64 {
    bumps.iter().map(|&(a, c, w)| a * bump_profile((t - c) / w)).sum()
}

/// `ℰ^{-1}u = (x₀ - t)² · bumps` left of `x₀`, arbitrary (oscillating) right of it.
fn pinned(bumps: Vec<(f64, f64, f64)>, left: f64, p: f64, wiggle: f64) -> Func {
    Func::new(
        move |t| {
            if t <= p {
                (p - t) * (p - t) * eval_bumps(&bumps, t)
            } else {
                wiggle * (5.0 * t).sin()
            }
        },
        TailHint::zero_beyond(left),
        TailHint::Unknown,
        "pinned bumps",
    )
}

pub fn max_principle_probe(
    spec: &WeightSpec,
    alpha: f64,
    trials: usize,
    seed: u64,
    cfg: &SingularConfig,
) -> Result<MaxPrincipleReport> {
    let p = spec.x0();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut max_value = f64::NEG_INFINITY;
    let mut comparison_violations = 0;
    for _ in 0..trials {
        let (bumps, left) = random_bumps(&mut rng, p);
        let wiggle = rng.random_range(-1.0..1.0);
        let u = Weighted::Left(pinned(bumps.clone(), left, p, wiggle));
        let d = frac_deriv_left(spec, alpha, &u, p, cfg)?;
        let scale = spec.e(p)? * eval_bumps(&bumps, p).max(1.0);
        if d > 1e-12 * scale {
            violations += 1;
        }
        max_value = max_value.max(d);

        // comparison: u₂ = smooth base, u₁ = u₂ + pinned nonnegative part
        let (base, base_left) = random_bumps(&mut rng, p);
        let v2 = {
            let base = base.clone();
            Func::new(move |t| eval_bumps(&base, t), TailHint::zero_beyond(base_left), TailHint::Unknown, "base")
        };
        let v1 = {
            let (base, extra) = (base.clone(), pinned(bumps, left, p, wiggle));
            Func::new(
                move |t| eval_bumps(&base, t) + extra.eval(t),
                TailHint::zero_beyond(base_left.min(left)),
                TailHint::Unknown,
                "base plus pinned",
            )
        };
        let d1 = frac_deriv_left(spec, alpha, &Weighted::Left(v1), p, cfg)?;
        let d2 = frac_deriv_left(spec, alpha, &Weighted::Left(v2), p, cfg)?;
        if d1 > d2 + 1e-12 * (d1.abs() + d2.abs() + scale) {
            comparison_violations += 1;
        }
    }
    // data vanishing identically on (-∞, x₀]
    let right_only = Func::new(
        move |t| bump_profile((t - p - 1.0) / 0.5),
        TailHint::zero_beyond(p + 0.5),
        TailHint::zero_beyond(p + 1.5),
        "right bump",
    );
    let equality_case = frac_deriv_left(spec, alpha, &Weighted::Left(right_only), p, cfg)?;
    Ok(MaxPrincipleReport {
        alpha,
        point: p,
        trials,
        violations,
        max_value,
        equality_case,
        comparison_violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_probe_has_no_violations() {
        let r = max_principle_probe(&WeightSpec::ou(), 0.5, 50, 1, &SingularConfig::default()).unwrap();
        assert_eq!(r.violations, 0);
        assert_eq!(r.comparison_violations, 0);
        assert!(r.max_value <= 0.0);
        assert!(r.equality_case.abs() <= 1e-12);
    }
}
