use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use fracinv::exactpoly::{generate, Family, Method};
use fracinv::extension::{boundary_limit, neumann_trace, pde_residual, ExtensionField};
use fracinv::favard::{monic_recurrence, orthogonality_check};
use fracinv::fracalc::{frac_deriv_left, frac_deriv_left_truncated, frac_int_left, Weighted};
use fracinv::quadrature::{gauss_rule, Func, Measure, SingularConfig};
use fracinv::rational::{fmt_q, parse_q, to_f64};
use fracinv::spectral::{
    default_t_grid, g_function_norm, heat_semigroup, maximal_l2_ratio, riesz, riesz_star, Basis, Expansion,
};
use fracinv::verify::{run_all, run_criterion, VerifyOptions};
use fracinv::weights::WeightSpec;
use fracinv::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;

const DEFAULT_SEED: u64 = 20240607;

#[derive(Parser)]
#[command(name = "fracinv", version, about = "Fractional powers of first-order operators and inverse-measure polynomials")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Out {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum FracOp {
    Deriv,
    Int,
}

#[derive(Clone, Copy, ValueEnum)]
enum SpectralOp {
    Heat,
    Maximal,
    Riesz,
    Gfun,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact coefficient tables, lowest degree first.
    GenPoly {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        #[arg(long, default_value = "rec")]
        method: String,
        #[arg(long, value_enum, default_value = "csv")]
        out: Out,
    },
    /// Gauss rule nodes and weights for `hermite`, `laguerre:a` or `jacobi:a,b`.
    Quad {
        #[arg(long)]
        measure: String,
        #[arg(long = "N")]
        n: usize,
        #[arg(long, value_enum, default_value = "csv")]
        out: Out,
    },
    /// Fractional power of the left operator on a grid; the function is given
    /// through `v = ℰ^{-1} u`.
    FracApply {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        func: String,
        /// `lo:hi:n`
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        #[arg(long, value_enum, default_value = "deriv")]
        op: FracOp,
        #[arg(long, value_enum, default_value = "csv")]
        out: Out,
    },
    /// Extension field, boundary limit, Neumann trace and PDE residuals at a point.
    ExtensionCheck {
        #[arg(long)]
        preset: String,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        func: String,
        #[arg(long, allow_hyphen_values = true)]
        x: f64,
        /// Decreasing heights, comma separated.
        #[arg(long, default_value = "0.4,0.2,0.1,0.05,0.025")]
        ys: String,
    },
    /// Spectral multipliers on a random expansion.
    SpectralDemo {
        #[arg(long)]
        basis: String,
        #[arg(long)]
        modes: usize,
        #[arg(long, value_enum)]
        op: SpectralOp,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        out: Out,
    },
    /// Moments and exact orthogonality of the monic inverse families.
    Favard {
        #[arg(long)]
        family: String,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        /// Highest moment index.
        #[arg(long = "N")]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        out: Out,
    },
    /// Runs every acceptance criterion; exit 0 iff all pass.
    VerifyAll {
        /// Fewer randomised trials.
        #[arg(long)]
        fast: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Comma-separated criterion numbers instead of all twelve.
        #[arg(long)]
        only: Option<String>,
    },
}

/// Output of one run: JSON parts, or CSV rows when requested.
struct Report {
    command: &'static str,
    params: Value,
    results: Value,
    failures: Vec<String>,
    csv: Option<Vec<String>>,
}

impl Report {
    fn new(command: &'static str, params: Value, results: Value) -> Self {
        Report { command, params, results, failures: Vec::new(), csv: None }
    }

    fn emit(&self) {
        let text = match &self.csv {
            Some(rows) => rows.join("\n"),
            None => {
                let v = json!({
                    "command": self.command,
                    "params": self.params,
                    "results": self.results,
                    "failures": self.failures,
                });
                serde_json::to_string_pretty(&v).expect("serializable")
            }
        };
        print_out(&text);
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn print_out(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
}

fn rational_f64(s: &str) -> fracinv::Result<f64> {
    parse_q(s).map(|q| to_f64(&q))
}

fn parse_grid(s: &str) -> fracinv::Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Error::Parse(format!("grid must be lo:hi:n, got {s:?}"));
    let [lo, hi, n] = parts.as_slice() else { return Err(bad()) };
    let lo = rational_f64(lo)?;
    let hi = rational_f64(hi)?;
    let n: usize = n.parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    if n == 1 {
        return Ok(vec![lo]);
    }
    Ok((0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect())
}

fn parse_list(s: &str) -> fracinv::Result<Vec<f64>> {
    s.split(',').map(rational_f64).collect()
}

fn gen_poly(
    family: &str,
    n: usize,
    alpha: Option<&str>,
    beta: Option<&str>,
    method: &str,
    out: Out,
) -> fracinv::Result<Report> {
    let fam = Family::from_name(family, alpha, beta)?;
    let m: Method = method.parse()?;
    let polys = generate(&fam, n, m)?;
    let rows: Vec<Vec<String>> = polys.iter().map(|p| p.coeffs().iter().map(fmt_q).collect()).collect();
    let mut r = Report::new(
        "gen-poly",
        json!({"family": family, "n": n, "alpha": alpha, "beta": beta, "method": method}),
        json!(rows.iter().enumerate().map(|(k, c)| json!({"n": k, "coeffs": c})).collect::<Vec<_>>()),
    );
    if out == Out::Csv {
        let mut lines = vec!["n,coeffs".to_string()];
        lines.extend(rows.iter().enumerate().map(|(k, c)| format!("{k},{}", c.join(" "))));
        r.csv = Some(lines);
    }
    Ok(r)
}

fn quad(measure: &str, n: usize, out: Out) -> fracinv::Result<Report> {
    let rule = gauss_rule(Measure::parse(measure)?, n)?;
    let mut r = Report::new(
        "quad",
        json!({"measure": measure, "N": n}),
        json!({"nodes": rule.nodes, "weights": rule.weights}),
    );
    if out == Out::Csv {
        let mut lines = vec!["node,weight".to_string()];
        lines.extend(rule.nodes.iter().zip(&rule.weights).map(|(x, w)| format!("{x},{w}")));
        r.csv = Some(lines);
    }
    Ok(r)
}

#[allow(clippy::too_many_arguments)]
fn frac_apply(
    preset: &str,
    alpha: &str,
    eps: Option<f64>,
    func: &str,
    grid: &str,
    op: FracOp,
    out: Out,
) -> fracinv::Result<Report> {
    let spec = WeightSpec::preset(preset)?;
    let a = rational_f64(alpha)?;
    let u = Weighted::Left(Func::parse(func)?);
    let xs = parse_grid(grid)?;
    let cfg = SingularConfig::default();
    let mut rows = Vec::with_capacity(xs.len());
    for &x in &xs {
        let value = match (op, eps) {
            (FracOp::Deriv, None) => frac_deriv_left(&spec, a, &u, x, &cfg)?,
            (FracOp::Deriv, Some(e)) => frac_deriv_left_truncated(&spec, a, &u, x, e, &cfg)?,
            (FracOp::Int, None) => frac_int_left(&spec, a, &u, x, &cfg)?,
            (FracOp::Int, Some(_)) => return Err(Error::Parse("--eps applies to the derivative only".into())),
        };
        rows.push((x, u.value(&spec, x)?, value));
    }
    let op_name = match op {
        FracOp::Deriv => "deriv",
        FracOp::Int => "int",
    };
    let mut r = Report::new(
        "frac-apply",
        json!({"preset": preset, "alpha": alpha, "eps": eps, "func": func, "grid": grid, "op": op_name}),
        json!(rows.iter().map(|(x, u, v)| json!({"x": x, "u": u, "value": v})).collect::<Vec<_>>()),
    );
    if out == Out::Csv {
        let mut lines = vec!["x,u,value".to_string()];
        lines.extend(rows.iter().map(|(x, u, v)| format!("{x},{u},{v}")));
        r.csv = Some(lines);
    }
    Ok(r)
}

fn extension_check(preset: &str, alpha: &str, func: &str, x: f64, ys: &str) -> fracinv::Result<Report> {
    let spec = WeightSpec::preset(preset)?;
    let a = rational_f64(alpha)?;
    let u = Weighted::Left(Func::parse(func)?);
    let ys = parse_list(ys)?;
    let field = ExtensionField::new(&spec, a, &u)?;
    let values = ys.iter().map(|&y| Ok(json!({"y": y, "U": field.eval(x, y)?}))).collect::<fracinv::Result<Vec<_>>>()?;
    let trace = neumann_trace(&field, x, &ys)?;
    let frac = frac_deriv_left(&spec, a, &u, x, &SingularConfig::default())?;
    let hs = [0.1, 0.05, 0.025, 0.0125];
    let y_res = 0.5;
    let residuals = hs.iter().map(|&h| pde_residual(&field, x + 0.1, y_res, h)).collect::<fracinv::Result<Vec<_>>>()?;
    let order = (residuals[2] / residuals[3]).abs().log2();
    let mut r = Report::new(
        "extension-check",
        json!({"preset": preset, "alpha": alpha, "func": func, "x": x, "ys": ys}),
        json!({
            "value": values,
            "boundary": field.boundary(x)?,
            "boundary_limit": boundary_limit(&field, x, &ys)?,
            "trace": trace,
            "frac_deriv": frac,
            "residual_table": {
                "x": x + 0.1,
                "y": y_res,
                "rows": hs.iter().zip(&residuals).map(|(h, r)| json!({"h": h, "residual": r})).collect::<Vec<_>>(),
                "observed_order": order,
            },
        }),
    );
    r.failures = trace.warnings.clone();
    Ok(r)
}

fn spectral_demo(basis: &str, modes: usize, op: SpectralOp, t: f64, seed: u64) -> fracinv::Result<Report> {
    let b = Basis::parse(basis)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = Expansion::random(b, modes, &mut rng)?;
    let (name, results) = match op {
        SpectralOp::Heat => {
            let h = heat_semigroup(&f, t)?;
            let bound = (-t * b.eigenvalue(0)).exp() * f.norm();
            ("heat", json!({"t": t, "coeffs": h.coeffs, "norm": h.norm(), "bound": bound, "input_norm": f.norm()}))
        }
        SpectralOp::Maximal => {
            let ratio = maximal_l2_ratio(&f, &default_t_grid())?;
            ("maximal", json!({"l2_ratio": ratio, "input_norm": f.norm()}))
        }
        SpectralOp::Riesz => {
            let r = riesz(&f)?;
            let rs = riesz_star(&f)?;
            ("riesz", json!({"riesz_norm": r.norm(), "riesz_star_norm": rs.norm(), "input_norm": f.norm()}))
        }
        SpectralOp::Gfun => ("gfun", serde_json::to_value(g_function_norm(&f)?).expect("serializable")),
    };
    let mut results = results;
    results["input_coeffs"] = json!(f.coeffs);
    Ok(Report::new("spectral-demo", json!({"basis": b, "modes": modes, "op": name, "seed": seed}), results))
}

fn favard(family: &str, alpha: Option<&str>, beta: Option<&str>, n: usize, out: Out) -> fracinv::Result<Report> {
    let fam = Family::from_name(family, alpha, beta)?;
    let mf = monic_recurrence(&fam, n + 1)?;
    let moments: Vec<String> = mf.moments(n)?.iter().map(fmt_q).collect();
    let check = orthogonality_check(&fam, n / 2)?;
    let mut r = Report::new(
        "favard",
        json!({"family": family, "alpha": alpha, "beta": beta, "N": n}),
        json!({
            "moments": moments,
            "c": mf.c.iter().map(fmt_q).collect::<Vec<_>>(),
            "lam": mf.lam.iter().map(fmt_q).collect::<Vec<_>>(),
            "orthogonality": check,
        }),
    );
    if !check.passed() {
        r.failures.push("orthogonality check failed".into());
    }
    if out == Out::Csv {
        let mut lines = vec!["k,moment".to_string()];
        lines.extend(moments.iter().enumerate().map(|(k, m)| format!("{k},{m}")));
        r.csv = Some(lines);
    }
    Ok(r)
}

fn verify_all(fast: bool, seed: u64, only: Option<&str>) -> fracinv::Result<Report> {
    let opts = VerifyOptions { fast, seed };
    let outcomes = match only {
        None => run_all(opts),
        Some(list) => list
            .split(',')
            .map(|s| {
                let id: usize = s.trim().parse().map_err(|_| Error::Parse(format!("bad criterion {s:?}")))?;
                run_criterion(id, opts).map_err(|e| Error::Parse(e.to_string()))
            })
            .collect::<fracinv::Result<Vec<_>>>()?,
    };
    for o in &outcomes {
        eprintln!("criterion {:>2} {:<40} {} ({:.1}s)", o.id, o.name, if o.passed { "PASS" } else { "FAIL" }, o.seconds);
    }
    let mut r = Report::new("verify-all", json!({"fast": fast, "seed": seed, "only": only}), json!(outcomes));
    r.failures = outcomes.iter().filter(|o| !o.passed).map(|o| format!("criterion {}: {}", o.id, o.name)).collect();
    Ok(r)
}

fn run(cli: Cli) -> fracinv::Result<Report> {
    match cli.cmd {
        Cmd::GenPoly { family, n, alpha, beta, method, out } => {
            gen_poly(&family, n, alpha.as_deref(), beta.as_deref(), &method, out)
        }
        Cmd::Quad { measure, n, out } => quad(&measure, n, out),
        Cmd::FracApply { preset, alpha, eps, func, grid, op, out } => {
            frac_apply(&preset, &alpha, eps, &func, &grid, op, out)
        }
        Cmd::ExtensionCheck { preset, alpha, func, x, ys } => extension_check(&preset, &alpha, &func, x, &ys),
        Cmd::SpectralDemo { basis, modes, op, t, seed, out } => {
            if out == Out::Csv {
                return Err(Error::Parse("spectral-demo writes JSON only".into()));
            }
            spectral_demo(&basis, modes, op, t, seed)
        }
        Cmd::Favard { family, alpha, beta, n, out } => favard(&family, alpha.as_deref(), beta.as_deref(), n, out),
        Cmd::VerifyAll { fast, seed, only } => verify_all(fast, seed, only.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match &cli.cmd {
        Cmd::GenPoly { .. } => "gen-poly",
        Cmd::Quad { .. } => "quad",
        Cmd::FracApply { .. } => "frac-apply",
        Cmd::ExtensionCheck { .. } => "extension-check",
        Cmd::SpectralDemo { .. } => "spectral-demo",
        Cmd::Favard { .. } => "favard",
        Cmd::VerifyAll { .. } => "verify-all",
    };
    match run(cli) {
        Ok(report) => {
            report.emit();
            if report.failures.is_empty() || command == "extension-check" {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Error::Parse(msg)) => {
            eprintln!("error: {msg}\n\n{}", Cli::command().render_usage());
            ExitCode::from(2)
        }
        Err(e) => {
            let diag = json!({"command": command, "params": Value::Null, "results": Value::Null, "failures": [e.to_string()]});
            print_out(&serde_json::to_string_pretty(&diag).expect("serializable"));
            ExitCode::from(1)
        }
    }
}
