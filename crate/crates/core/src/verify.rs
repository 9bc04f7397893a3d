//! Runs the twelve acceptance criteria and reports one outcome per criterion.

use crate::error::{Error, Result};
use crate::exactpoly::{eigencheck, endpoint_values, generate, hypergeometric, recurrence, Family, Method};
use crate::extension::{bessel_k, boundary_limit, neumann_trace, pde_residual, ExtensionField};
use crate::favard::orthogonality_check;
use crate::fracalc::{
    bbm::default_alpha_grid, bbm_sweep, frac_deriv_left, frac_int_left, ftc::DEFAULT_EPS, ftc_check,
    max_principle_probe, semigroup_left, Weighted,
};
use crate::numerics::gamma;
use crate::quadrature::{gauss_rule, integrate, AdaptiveConfig, Func, SingularConfig, TailHint};
use crate::rational::{binom, fmt_q, q, qi, Q};
use crate::spectral::{
    heat_semigroup, laguerre_jacobi_suite, riesz_mode_ratios, starred_eigenvalues, Basis, Expansion, StarredBasis,
};
use crate::weights::WeightSpec;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::time::Instant;

#[derive(Clone, Debug, Serialize)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub seconds: f64,
    /// Failures, or a short summary of what was measured when passing.
    pub detail: Vec<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct VerifyOptions {
    /// Fewer randomised trials (criteria 8 and 10); tolerances are unchanged.
    pub fast: bool,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { fast: false, seed: 20240607 }
    }
}

pub const NAMES: [&str; 12] = [
    "triple construction exactness",
    "eigen-identities",
    "starred orthogonality",
    "endpoint and hypergeometric identities",
    "fractional oracle on exponentials",
    "fundamental theorem reconstruction",
    "limits at the order endpoints",
    "maximum principle",
    "extension problem",
    "spectral suite",
    "moment functional",
    "semigroup axioms",
];

/// Collects failure lines; a check either passes or records why not.
#[derive(Default)]
struct Log {
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Log {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(msg());
        }
    }

    fn note(&mut self, msg: String) {
        self.notes.push(msg);
    }

    fn fail(&mut self, msg: String) {
        self.failures.push(msg);
    }

    fn finish(self, id: usize, start: Instant, budget: Option<f64>) -> Outcome {
        let seconds = start.elapsed().as_secs_f64();
        let mut failures = self.failures;
        if let Some(b) = budget {
            if seconds > b {
                failures.push(format!("runtime {seconds:.1}s exceeds {b}s"));
            }
        }
        let passed = failures.is_empty();
        Outcome { id, name: NAMES[id - 1], passed, seconds, detail: if passed { self.notes } else { failures } }
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn inverse_families() -> Vec<Family> {
    let mut v = vec![Family::InvHermite];
    for a in [q(1, 2), q(3, 7), q(-1, 3)] {
        v.push(Family::InvLaguerre { alpha: a });
    }
    for (a, b) in jacobi_params() {
        v.push(Family::InvJacobi { alpha: a, beta: b });
    }
    v
}

fn jacobi_params() -> Vec<(Q, Q)> {
    vec![(q(1, 2), q(1, 2)), (q(1, 3), q(1, 4)), (qi(0), qi(0))]
}

fn c1(log: &mut Log) -> Result<()> {
    for fam in inverse_families() {
        let rec = generate(&fam, 20, Method::Recurrence)?;
        let rod = generate(&fam, 20, Method::Rodrigues)?;
        let gen = generate(&fam, 20, Method::Genfun)?;
        for n in 0..=20 {
            log.check(rec[n] == rod[n] && rod[n] == gen[n], || format!("{fam}: constructions differ at n = {n}"));
        }
    }
    log.note("7 families x 21 degrees agree exactly".into());
    Ok(())
}

fn c2(log: &mut Log) -> Result<()> {
    for fam in inverse_families() {
        if let Err(e) = eigencheck(&fam, 20) {
            log.fail(format!("{fam}: {e}"));
        }
    }
    let mut starred = vec![StarredBasis::InvGauss];
    for a in [q(1, 2), q(3, 7), q(-1, 3)] {
        starred.push(StarredBasis::InvLaguerre { alpha: a });
    }
    for (a, b) in jacobi_params() {
        starred.push(StarredBasis::InvJacobi { alpha: a, beta: b });
    }
    for b in starred {
        let entries = starred_eigenvalues(&b, 15)?;
        let bad: Vec<_> = entries.iter().filter(|e| !e.matches).collect();
        if let Some(first) = bad.first() {
            log.fail(format!(
                "{b}: {} of 16 degrees differ; n = {}: stated {}, actual {}",
                bad.len(),
                first.n,
                first.stated,
                first.actual.as_deref().unwrap_or("none")
            ));
        }
    }
    Ok(())
}

fn gram_check(log: &mut Log, basis: Basis, n_max: usize, norm: impl Fn(usize) -> f64) -> Result<()> {
    let rule = gauss_rule(basis.measure(), n_max + 10)?;
    let k = basis.reduction_constant();
    let table: Vec<Vec<f64>> = rule.nodes.iter().map(|&x| basis.polys(n_max, x)).collect();
    let entry = |m: usize, n: usize| k * rule.weights.iter().zip(&table).map(|(w, p)| w * p[m] * p[n]).sum::<f64>();
    let mut worst_off: f64 = 0.0;
    let mut worst_diag: f64 = 0.0;
    for m in 0..=n_max {
        let want = norm(m);
        let d = rel(entry(m, m), want);
        worst_diag = worst_diag.max(d);
        log.check(d <= 1e-10, || format!("{basis:?}: norm of mode {m} off by {d:e}"));
        for n in 0..m {
            let o = entry(m, n).abs() / (norm(m) * norm(n)).sqrt();
            worst_off = worst_off.max(o);
            log.check(o <= 1e-10, || format!("{basis:?}: Gram entry ({m},{n}) = {o:e} relative"));
        }
    }
    log.note(format!("{basis:?}: max off-diagonal {worst_off:.1e}, max norm error {worst_diag:.1e}"));
    Ok(())
}

fn c3(log: &mut Log) -> Result<()> {
    // closed-form norms computed here from Γ, independently of the basis code
    gram_check(log, Basis::InvGauss, 20, |n| {
        (1..=n).fold(std::f64::consts::PI, |acc, k| acc * 2.0 * k as f64)
    })?;
    for a in [0.5, 3.0 / 7.0, -1.0 / 3.0] {
        gram_check(log, Basis::InvLaguerre { alpha: a }, 15, |n| {
            gamma(n as f64 + a + 1.0) / gamma(n as f64 + 1.0)
        })?;
    }
    for (a, b) in [(0.5, 0.5), (1.0 / 3.0, 0.25)] {
        gram_check(log, Basis::InvJacobi { alpha: a, beta: b }, 15, |n| {
            let nf = n as f64;
            2f64.powf(a + b + 1.0) / (2.0 * nf + a + b + 1.0) * gamma(nf + a + 1.0) * gamma(nf + b + 1.0)
                / (gamma(nf + a + b + 1.0) * gamma(nf + 1.0))
        })?;
    }
    Ok(())
}

fn c4(log: &mut Log) -> Result<()> {
    for (a, b) in jacobi_params() {
        let rec = recurrence(&Family::InvJacobi { alpha: a.clone(), beta: b.clone() }, 10)?;
        for (n, p) in rec.iter().enumerate() {
            let nq = qi(n as i64);
            let one = binom(&(&nq - &a), n);
            let minus = if n % 2 == 0 { binom(&(&nq - &b), n) } else { -binom(&(&nq - &b), n) };
            log.check(p.eval(&qi(1)) == one, || format!("({a},{b}) n={n}: P(1) = {}", fmt_q(&p.eval(&qi(1)))));
            log.check(p.eval(&qi(-1)) == minus, || format!("({a},{b}) n={n}: P(-1) = {}", fmt_q(&p.eval(&qi(-1)))));
            endpoint_values(n, &a, &b)?;
            log.check(&hypergeometric(n, &a, &b)? == p, || format!("({a},{b}) n={n}: hypergeometric form differs"));
        }
    }
    Ok(())
}

fn presets() -> Vec<WeightSpec> {
    vec![
        WeightSpec::zero(),
        WeightSpec::ou(),
        WeightSpec::hermite(),
        WeightSpec::laguerre(0.5),
        WeightSpec::jacobi(0.5, 0.5),
    ]
}

fn c5(log: &mut Log) -> Result<()> {
    let cfg = SingularConfig::default();
    let mut worst: f64 = 0.0;
    for spec in presets() {
        let x = spec.x0();
        for alpha in [0.1, 0.25, 0.5, 0.75, 0.9] {
            for lam in [0.5, 1.0, 2.0] {
                let u = Weighted::Left(Func::exp(lam));
                let base = u.value(&spec, x)?;
                let d = rel(frac_deriv_left(&spec, alpha, &u, x, &cfg)?, lam.powf(alpha) * base);
                let i = rel(frac_int_left(&spec, alpha, &u, x, &cfg)?, lam.powf(-alpha) * base);
                worst = worst.max(d).max(i);
                log.check(d <= 1e-6 && i <= 1e-6, || {
                    format!("{spec:?} α={alpha} λ={lam}: derivative {d:e}, integral {i:e}")
                });
            }
        }
    }
    log.note(format!("worst relative error {worst:.1e}"));
    Ok(())
}

fn c6(log: &mut Log) -> Result<()> {
    let cfg = SingularConfig::default();
    let cases = [
        (WeightSpec::zero(), 0.5, Func::exp(1.0), 0.0),
        (WeightSpec::ou(), 0.3, Func::gaussian(0.0, 1.0), 0.2),
        (WeightSpec::hermite(), 0.7, Func::bump(0.0, 1.0), 0.1),
        (WeightSpec::laguerre(0.5), 0.4, Func::gaussian(1.0, 2.0), 1.2),
    ];
    for (spec, alpha, f, x) in cases {
        let label = f.label.clone();
        let r = ftc_check(&spec, alpha, &Weighted::Left(f), x, &DEFAULT_EPS, &cfg)?;
        log.note(format!("{spec:?} {label} α={alpha}: error {:.1e}", r.abs_error));
        log.check(r.abs_error <= 1e-4, || format!("{spec:?} {label} α={alpha}: error {:e}", r.abs_error));
    }
    Ok(())
}

fn c7(log: &mut Log) -> Result<()> {
    let cfg = SingularConfig::default();
    let grid = default_alpha_grid();
    let cases = [
        (WeightSpec::zero(), Func::gaussian(0.0, 1.0), 0.3),
        (WeightSpec::ou(), Func::bump(0.0, 1.5), 0.2),
        (WeightSpec::hermite(), Func::gaussian(-0.5, 2.0), -0.1),
    ];
    for (spec, f, x) in cases {
        let label = f.label.clone();
        let r = bbm_sweep(&spec, &Weighted::Left(f), x, &grid, &cfg)?;
        log.note(format!("{spec:?} {label}: α→1 {:.1e}, α→0 {:.1e}", r.dev_one, r.dev_zero));
        log.check(r.dev_one <= 1e-3 && r.dev_zero <= 1e-3, || {
            format!("{spec:?} {label}: deviations {:e} (α→1), {:e} (α→0)", r.dev_one, r.dev_zero)
        });
    }
    Ok(())
}

fn c8(log: &mut Log, opts: VerifyOptions) -> Result<()> {
    let cfg = SingularConfig::default();
    let total = if opts.fast { 1000 } else { 10_000 };
    let configs = [
        (WeightSpec::zero(), 0.5),
        (WeightSpec::ou(), 0.25),
        (WeightSpec::hermite(), 0.75),
        (WeightSpec::laguerre(0.5), 0.5),
        (WeightSpec::jacobi(0.5, 0.5), 0.3),
    ];
    let per = total / configs.len();
    for (k, (spec, alpha)) in configs.into_iter().enumerate() {
        let r = max_principle_probe(&spec, alpha, per, opts.seed + k as u64, &cfg)?;
        log.check(r.violations == 0, || format!("{spec:?} α={alpha}: {} violations", r.violations));
        log.check(r.comparison_violations == 0, || {
            format!("{spec:?} α={alpha}: {} comparison violations", r.comparison_violations)
        });
        log.check(r.equality_case.abs() <= 1e-12, || format!("{spec:?} α={alpha}: equality case {:e}", r.equality_case));
    }
    log.note(format!("{} randomized configurations", per * 5));
    Ok(())
}

fn c9(log: &mut Log) -> Result<()> {
    let zero = WeightSpec::zero();
    // closed form (2^{1-α}/Γ(α)) z^α K_α(z) e^{λx}, z = y√λ, with K by its integral
    let mut worst: f64 = 0.0;
    for alpha in [0.25, 0.5, 0.75] {
        for lam in [0.5, 1.0, 2.0] {
            let field = ExtensionField::new(&zero, alpha, &Weighted::Left(Func::exp(lam)))?;
            for &(x, y) in &[(0.0, 1.0), (0.5, 0.3), (-1.0, 2.0)] {
                let z = y * f64::sqrt(lam);
                let want = (lam * x).exp() * 2f64.powf(1.0 - alpha) / gamma(alpha) * z.powf(alpha) * bessel_k(alpha, z)?;
                let e = rel(field.eval(x, y)?, want);
                worst = worst.max(e);
                log.check(e <= 1e-8, || format!("Bessel α={alpha} λ={lam} ({x},{y}): {e:e}"));
            }
        }
    }
    log.note(format!("Bessel closed form worst {worst:.1e}"));

    let cfg = SingularConfig::default();
    let three = [0.1, 0.05, 0.025];
    let four = [0.1, 0.05, 0.025, 0.0125];
    let cases: [(WeightSpec, f64, Func, f64, &[f64]); 3] = [
        (WeightSpec::zero(), 0.5, Func::exp(1.0), 0.0, &three),
        (WeightSpec::ou(), 0.25, Func::exp(1.0), 0.0, &four),
        (WeightSpec::laguerre(0.5), 0.7, Func::bump(0.5, 1.0), 1.0, &four),
    ];
    for (spec, alpha, v, x, ys) in cases {
        let u = Weighted::Left(v);
        let field = ExtensionField::new(&spec, alpha, &u)?;
        let b = (boundary_limit(&field, x, ys)? - field.boundary(x)?).abs();
        log.note(format!("{spec:?} α={alpha}: boundary error {b:.1e} over {} heights", ys.len()));
        log.check(b <= 1e-4, || format!("{spec:?} α={alpha}: boundary limit error {b:e}"));

        let trace = neumann_trace(&field, x, &[0.4, 0.2, 0.1, 0.05, 0.025])?;
        let want = frac_deriv_left(&spec, alpha, &u, x, &cfg)?;
        let t = (trace.estimate - want).abs();
        log.note(format!("{spec:?} α={alpha}: trace error {t:.1e}"));
        log.check(t <= 1e-4, || format!("{spec:?} α={alpha}: Neumann trace {} vs {want}", trace.estimate));

        let hs = [0.1, 0.05, 0.025, 0.0125];
        let res: Vec<f64> = hs.iter().map(|&h| pde_residual(&field, x + 0.1, 0.5, h).map(f64::abs)).collect::<Result<_>>()?;
        let order = (res[2] / res[3]).log2();
        log.note(format!("{spec:?} α={alpha}: residual order {order:.2}"));
        log.check(order >= 1.8, || format!("{spec:?} α={alpha}: residual order {order:.3} from {res:?}"));
    }
    Ok(())
}

fn c10(log: &mut Log, opts: VerifyOptions) -> Result<()> {
    let trials = if opts.fast { 20 } else { 100 };
    // coefficient-level contraction: e^{-tΛ_n} <= e^{-2t}, Λ_n = 2n + 2
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let f = Expansion::random(Basis::InvGauss, 10, &mut rng)?;
    for t in [0.0, 0.01, 0.5, 3.0] {
        let h = heat_semigroup(&f, t)?;
        for (n, (a, c)) in h.coeffs.iter().zip(&f.coeffs).enumerate() {
            log.check(a.abs() <= (-2.0 * t).exp() * c.abs(), || format!("contraction fails at t={t}, n={n}"));
        }
    }
    for (n, (up, down)) in riesz_mode_ratios(20).into_iter().enumerate() {
        log.check(up == qi(1), || format!("‖R H*_{n}‖²/‖H*_{n}‖² = {}", fmt_q(&up)));
        log.check(down == q(n as i64, n as i64 + 1), || format!("‖R* H*_{n}‖²/‖H*_{n}‖² = {}", fmt_q(&down)));
    }
    for (k, basis) in
        [Basis::InvGauss, Basis::InvLaguerre { alpha: 0.5 }, Basis::InvJacobi { alpha: 0.5, beta: 0.5 }]
            .into_iter()
            .enumerate()
    {
        match laguerre_jacobi_suite(basis, 10, trials, opts.seed + 1 + k as u64) {
            Ok(r) => {
                log.note(format!(
                    "{basis:?}: maximal ratio ≤ {:.3}, g-function {:.1e}, contraction {:.3}",
                    r.maximal_ratio_max, r.g_function_max_rel, r.contraction_max
                ));
                log.check(r.maximal_ratio_max <= 3.0, || format!("{basis:?}: maximal ratio {}", r.maximal_ratio_max));
                log.check(r.g_function_max_rel <= 1e-8, || format!("{basis:?}: g-function {:e}", r.g_function_max_rel));
                log.check(r.contraction_max <= 1.0 + 1e-12, || {
                    format!("{basis:?}: contraction ratio {}", r.contraction_max)
                });
                log.check(r.parseval_max_rel <= 1e-10, || format!("{basis:?}: Parseval {:e}", r.parseval_max_rel));
            }
            Err(e) => log.fail(format!("{basis:?}: {e}")),
        }
    }
    Ok(())
}

fn c11(log: &mut Log) -> Result<()> {
    for fam in inverse_families() {
        match orthogonality_check(&fam, 12) {
            Ok(r) => {
                log.check(r.passed(), || {
                    format!(
                        "{fam}: routes agree {}, off-diagonal {:?}, diagonal {:?}",
                        r.routes_agree, r.off_diagonal_failures, r.diagonal_failures
                    )
                });
                if fam == Family::InvHermite {
                    let want = ["2/1", "0/1", "-1/1", "0/1", "3/2"];
                    log.check(r.moments[..5] == want, || format!("Hermite moments {:?}", &r.moments[..5]));
                }
            }
            Err(e) => log.fail(format!("{fam}: {e}")),
        }
    }
    Ok(())
}

fn c12(log: &mut Log) -> Result<()> {
    let cases = [
        (WeightSpec::zero(), Func::gaussian(0.3, 1.0)),
        (WeightSpec::ou(), Func::bump(0.0, 1.2)),
        (WeightSpec::hermite(), Func::gaussian(-0.4, 0.5)),
    ];
    for (spec, v) in cases {
        let direct = Weighted::Direct {
            u: {
                let (s, v) = (spec.clone(), v.clone());
                Func::new(move |t| s.e(t).unwrap_or(f64::NAN) * v.eval(t), TailHint::Unknown, TailHint::Unknown, "u")
            },
            left: TailHint::Unknown,
            right: TailHint::Unknown,
        };
        for x in [-0.7, 0.0, 0.6] {
            log.check(semigroup_left(&spec, &direct, 0.0, x)? == direct.value(&spec, x)?, || {
                format!("{spec:?}: T_0 u({x}) differs from u({x})")
            });
            for (s, t) in [(0.2, 0.5), (1.0, 0.3)] {
                let inner = {
                    let (sp, d) = (spec.clone(), direct.clone());
                    Func::new(
                        move |y| semigroup_left(&sp, &d, t, y).unwrap_or(f64::NAN),
                        TailHint::Unknown,
                        TailHint::Unknown,
                        "T_t u",
                    )
                };
                let tw = Weighted::Direct { u: inner, left: TailHint::Unknown, right: TailHint::Unknown };
                let composed = semigroup_left(&spec, &tw, s, x)?;
                let once = semigroup_left(&spec, &direct, s + t, x)?;
                let e = (composed - once).abs() / once.abs().max(1e-300);
                log.check(e <= 1e-12, || format!("{spec:?}: T_{s} T_{t} vs T_{} at {x}: {e:e}", s + t));
            }
        }
        // ‖ℰ^{-1} T_t u‖_p = ‖ℰ^{-1} u‖_p on the whole line
        let cfg = AdaptiveConfig { abs_tol: 0.0, rel_tol: 1e-12, max_panels: 4000 };
        for p in [1, 2] {
            let norm = |t: f64| -> Result<f64> {
                let g = |y: f64| (spec.e_inv(y).unwrap_or(f64::NAN) * semigroup_left(&spec, &direct, t, y).unwrap_or(f64::NAN)).abs().powi(p);
                Ok(integrate(g, -12.0, 12.0, &cfg)?.value)
            };
            let base = norm(0.0)?;
            for t in [0.25, 1.0] {
                let e = rel(norm(t)?, base);
                log.check(e <= 1e-8, || format!("{spec:?}: p={p} weighted norm drifts by {e:e} at t={t}"));
            }
        }
    }
    Ok(())
}

/// Runs a single criterion `1..=12`.
pub fn run_criterion(id: usize, opts: VerifyOptions) -> Result<Outcome> {
    if !(1..=12).contains(&id) {
        return Err(Error::Parameter(format!("no criterion {id}")));
    }
    let start = Instant::now();
    let mut log = Log::default();
    let res = match id {
        1 => c1(&mut log),
        2 => c2(&mut log),
        3 => c3(&mut log),
        4 => c4(&mut log),
        5 => c5(&mut log),
        6 => c6(&mut log),
        7 => c7(&mut log),
        8 => c8(&mut log, opts),
        9 => c9(&mut log),
        10 => c10(&mut log, opts),
        11 => c11(&mut log),
        _ => c12(&mut log),
    };
    if let Err(e) = res {
        log.fail(format!("error: {e}"));
    }
    let budget = match id {
        1 => Some(10.0),
        5 => Some(30.0),
        _ => None,
    };
    Ok(log.finish(id, start, budget))
}

pub fn run_all(opts: VerifyOptions) -> Vec<Outcome> {
    (1..=12).map(|id| run_criterion(id, opts).expect("criterion ids are in range")).collect()
}

