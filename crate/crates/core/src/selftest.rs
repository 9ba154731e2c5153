//! Seeded self-checks of the numeric and closed-form engines.
//!
//! Each check draws its cases from its own ChaCha stream, keyed by the seed
//! and the check name, so `--filter` never changes what a check sees.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::closed_form::{differentiate_power, integrate_power};
use crate::error::Result;
use crate::quadrature::{
    build_moments, differentiate_numeric, integrate_exp_lower_inf, integrate_numeric,
    integrate_numeric_planned, integrate_with_plan, richardson_derivative, QuadConfig,
};
use crate::special::{beta, complex_pow, gamma, is_gamma_pole, ComplexOrder};

/// Γ at 20 points, from a 50-digit arbitrary-precision evaluation (tests/oracles/gamma_refs.py).
#[allow(clippy::excessive_precision)]
pub const GAMMA_REFERENCE: [((f64, f64), (f64, f64)); 20] = [
    ((1.0, 1.0), (0.49801566811835604, -0.15494982830181069)),
    ((0.5, 0.0), (1.772453850905516, 0.0)),
    ((2.5, 0.0), (1.329340388179137, 0.0)),
    ((-0.5, 2.0), (-0.039038849162115519, -0.035167876062686938)),
    ((1.0, 0.0), (1.0, 0.0)),
    ((5.0, 0.0), (24.0, 0.0)),
    ((0.25, 0.75), (0.19333666545026184, -0.82145159070746165)),
    ((3.5, -2.25), (-1.3596673328276313, -0.70874813693394843)),
    ((10.0, 5.0), (47216.41207195225, -91467.537666754996)),
    ((-2.5, 0.5), (-0.33387520352243234, -0.20645730796360841)),
    ((-4.3, -1.1), (0.0042031929764950204, 0.0041363745300509675)),
    ((0.1, 0.0), (9.5135076986687313, 0.0)),
    ((0.1, 10.0), (1.4815875493685427e-7, -2.5840447322347109e-8)),
    ((20.0, 0.0), (1.21645100408832e+17, 0.0)),
    ((-0.75, 0.0), (-4.8341465442958777, 0.0)),
    (
        (7.2, 15.5),
        (-0.0001901673078966689, -0.0076874055435007568),
    ),
    ((1.5, -0.5), (0.79073891412786501, -0.027425085413882389)),
    (
        (-1.5, 3.0),
        (-0.0020960381605393191, 0.00069222595466354387),
    ),
    ((0.01, 0.01), (49.432672970478194, -49.990288972795133)),
    (
        (25.0, -3.0),
        (-5.0834474753873916e+23, 9.1930870308408658e+22),
    ),
];

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub name: &'static str,
    pub cases: usize,
    /// Largest error (or bound ratio) seen; infinite if a case failed outright.
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
}

struct Check {
    name: &'static str,
    tolerance: f64,
    run: fn(&mut ChaCha8Rng) -> Vec<Result<f64>>,
}

const CHECKS: &[Check] = &[
    Check {
        name: "gamma/reference",
        tolerance: 1e-12,
        run: gamma_reference,
    },
    Check {
        name: "gamma/recurrence",
        tolerance: 1e-11,
        run: gamma_recurrence,
    },
    Check {
        name: "gamma/reflection",
        tolerance: 1e-10,
        run: gamma_reflection,
    },
    Check {
        name: "gamma/conjugate",
        tolerance: 1e-12,
        run: gamma_conjugate,
    },
    Check {
        name: "beta/symmetry",
        tolerance: 1e-12,
        run: beta_symmetry,
    },
    Check {
        name: "beta/modulus-bound",
        tolerance: 1.0 + 1e-12,
        run: beta_modulus_bound,
    },
    Check {
        name: "moments/beta",
        tolerance: 1e-12,
        run: moments_vs_beta,
    },
    Check {
        name: "quadrature/oracle",
        tolerance: 1e-8,
        run: quadrature_oracle,
    },
    Check {
        name: "quadrature/convergence-bound",
        tolerance: 1.0 + 1e-9,
        run: convergence_bound,
    },
    Check {
        name: "semigroup/real",
        tolerance: 1e-6,
        run: semigroup_real,
    },
    Check {
        name: "semigroup/complex",
        tolerance: 1e-6,
        run: semigroup_complex,
    },
    Check {
        name: "left-inverse",
        tolerance: 1e-5,
        run: left_inverse,
    },
    Check {
        name: "k-independence",
        tolerance: 1e-5,
        run: k_independence,
    },
    Check {
        name: "derivative-of-integral",
        tolerance: 1e-5,
        run: derivative_of_integral,
    },
    Check {
        name: "exp-lower-limit",
        tolerance: 1e-10,
        run: exp_lower_limit,
    },
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.name).collect()
}

fn stream_seed(seed: u64, name: &str) -> u64 {
    // FNV-1a over the name, mixed with the user seed
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed.wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

/// Runs every check whose name contains `filter` (all when `None`).
pub fn run(filter: Option<&str>, seed: u64) -> Vec<CheckReport> {
    let selected: Vec<&Check> = CHECKS
        .iter()
        .filter(|c| filter.is_none_or(|f| c.name.contains(f)))
        .collect();
    selected
        .par_iter()
        .map(|check| {
            let mut rng = ChaCha8Rng::seed_from_u64(stream_seed(seed, check.name));
            let outcomes = (check.run)(&mut rng);
            let worst = outcomes
                .iter()
                .map(|r| match r {
                    Ok(e) if !e.is_nan() => *e,
                    _ => f64::INFINITY,
                })
                .fold(0.0, f64::max);
            CheckReport {
                name: check.name,
                cases: outcomes.len(),
                worst,
                tolerance: check.tolerance,
                passed: !outcomes.is_empty() && worst <= check.tolerance,
            }
        })
        .collect()
}

/// Fixed-width pass/fail table, one row per check plus a summary line.
pub fn render_table(reports: &[CheckReport]) -> String {
    let mut out = format!(
        "{:<30} {:>6} {:>10} {:>10}  result\n",
        "check", "cases", "worst", "tol"
    );
    for r in reports {
        out.push_str(&format!(
            "{:<30} {:>6} {:>10.2e} {:>10.2e}  {}\n",
            r.name,
            r.cases,
            r.worst,
            r.tolerance,
            if r.passed { "PASS" } else { "FAIL" }
        ));
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} checks passed\n", reports.len()));
    out
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1e-300)
}

fn cfg() -> QuadConfig {
    QuadConfig::default()
}

/// Same as `cfg()` but converged further, for integrals nested inside others.
fn inner_cfg() -> QuadConfig {
    QuadConfig {
        rel_tol: 1e-12,
        ..QuadConfig::default()
    }
}

fn power(p: Complex64) -> impl Fn(f64) -> Complex64 + Sync {
    move |y: f64| {
        if y <= 0.0 {
            c(0.0, 0.0)
        } else {
            complex_pow(y, p).unwrap_or(c(f64::NAN, 0.0))
        }
    }
}

fn closed_integral(p: Complex64, s: ComplexOrder, x: f64) -> Result<Complex64> {
    let (coef, e) = integrate_power(p, s)?;
    Ok(coef * complex_pow(x, e)?)
}

fn closed_derivative(p: Complex64, s: ComplexOrder, x: f64) -> Result<Complex64> {
    let (coef, e) = differentiate_power(p, s)?;
    Ok(coef * complex_pow(x, e)?)
}

fn gamma_reference(_: &mut ChaCha8Rng) -> Vec<Result<f64>> {
    GAMMA_REFERENCE
        .iter()
        .map(|&((zr, zi), (gr, gi))| Ok(rel(gamma(c(zr, zi))?, c(gr, gi))))
        .collect()
}

/// Points with Re in [lo, hi], |Im| <= 10, kept clear of the poles.
fn gamma_points(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let z = c(rng.gen_range(lo..hi), rng.gen_range(-10.0..10.0));
        let near_pole = z.re < 0.5 && (z.re - z.re.round()).abs() < 1e-3 && z.im.abs() < 1e-3;
        if !near_pole {
            out.push(z);
        }
    }
    out
}

fn gamma_recurrence(rng: &mut ChaCha8Rng) -> Vec<Result<f64>> {
    gamma_points(rng, 200, -5.0, 20.0)
        .into_iter()
        .map(|z| Ok(rel(z * gamma(z)?, gamma(z + 1.0)?)))
        .collect()
}

fn gamma_reflection(rng: &mut ChaCha8Rng) -> Vec<Result<f64>> {
    gamma_points(rng, 200, -5.0, 5.0)
        .into_iter()
        .filter(|&z| !is_gamma_pole(1.0 - z))
        .map(|z| Ok(rel(gamma(z)? * gamma(1.0 - z)?, PI / (z * PI).sin())))
        .collect()
}

fn gamma_conjugate(rng: &mut ChaCha8Rng) -> Vec<Result<f64>> {
    gamma_points(rng, 200, -5.0, 20.0)
        .into_iter()
        .map(|z| Ok(rel(gamma(z.conj())?, gamma(z)?.conj())))
        .collect()
}

fn beta_symmetry(rng: &mut ChaCha8Rng) -> Vec<Result<f64>> {
    (0..200)
        .map(|_| {
            let a = c(rng.gen_range(0.05..6.0), rng.gen_range(-4.0..4.0));
            let b = c(rng.gen_range(0.05..6.0), rng.gen_range(-4.0..4.0));
            Ok(rel(beta(a, b)?, beta(b, a)?))
        })
        .collect()
}

/// `|B(s, p+1)| <= B(Re s, p+1)` on a 20×20 grid; reports the ratio.
fn beta_modulus_bound(_: &mut ChaCha8Rng) -> Vec<Result<f64>> {
    let mut out = Vec::with_capacity(400);
    for i in 0..20 {
        let alpha = 0.05 + 0.15 * i as f64;
        let b = -3.0 + 0.3 * i as f64;
        for j in 0..20 {
            let p = 0.25 * j as f64;
            out.push((|| {
                let lhs = beta(c(alpha, b), c(p + 1.0, 0.0))?.norm();
                let rhs = beta(c(alpha, 0.0), c(p + 1.0, 0.0))?.re;
                Ok(lhs / rhs)
            })());
        }
    }
    out
}

fn moments_vs_beta(_: &mut ChaCha8Rng) -> Vec<Result<f64>> {
    let mut out = Vec::new();
    for s in [c(0.5, 0.0), c(1.0, 1.0), c(0.25, 2.0)] {
        let table = match build_moments(ComplexOrder::new(s).expect("finite"), 64) {
            Ok(t) => t,
            Err(e) => return vec![Err(e)],
        };
        for (k, &m) in table.moments().iter().enumerate() {
            out.push(beta(s, c(k as f64 + 1.0, 0.0)).map(|b| rel(m, b)));
        }
    }
    out
}

/// Random (s, p, x) drawn from the ranges the numeric backend promises to
/// cover: Re s in (0, 3], Re p in (-0.5, 3], x in (0, 5].
fn oracle_cases(rng: &mut ChaCha8Rng, n: usize) -> Vec<(ComplexOrder, Complex64, f64)> {
    (0..n)
        .map(|_| {
            let s = ComplexOrder::from_parts(rng.gen_range(0.05..=3.0), rng.gen_range(-2.0..=2.0));
            let p = c(rng.gen_range(-0.45..=3.0), rng.gen_range(-2.0..=2.0));
            let x = rng.gen_range(0.05..=5.0);
            (s, p, x)
        })
        .collect()
}

fn quadrature_oracle(rng: &mut ChaCha8Rng) -> Vec<Result<f64>> {
    oracle_cases(rng, 100)
        .into_par_iter()
        .map(|(s, p, x)| {
            let num = integrate_numeric(&power(p), s, x, 0.0, &cfg())?;
            Ok(rel(num, closed_integral(p, s, x)?))
        })
        .collect()
}

/// `|J^s x^p| <= x^{Re s + p} / (Re s |Γ(s)|)` on a 10×10×3 grid; reports
/// the ratio of the two sides.
fn convergence_bound(_: &mut ChaCha8Rng) -> Vec<Result<f64>> {
    let mut cases = Vec::with_capacity(300);
    for i in 0..10 {
        let s = ComplexOrder::from_parts(0.1 + 0.3 * i as f64, 1.5 - 0.35 * i as f64);
        for j in 0..10 {
            let p = 0.35 * j as f64;
            for x in [0.5, 1.0, 2.0] {
                cases.push((s, p, x));
            }
        }
    }
    cases
        .into_par_iter()
        .map(|(s, p, x)| {
            let lhs = integrate_numeric(&power(c(p, 0.0)), s, x, 0.0, &cfg())?.norm();
            let rhs = x.powf(s.alpha() + p) / (s.alpha() * gamma(s.value())?.norm());
            Ok(lhs / rhs)
        })
        .collect()
}

fn quadratic_plus_linear(y: f64) -> Complex64 {
    if y <= 0.0 {
        c(0.0, 0.0)
    } else {
        c(y * y + y, 0.0)
    }
}

/// J^{s1}(J^{s2} f) evaluated fully numerically against J^{s1+s2} f.
fn nested_integral(s1: ComplexOrder, s2: ComplexOrder, x: f64) -> Result<f64> {
    let inner = |y: f64| {
        if y <= 0.0 {
            return c(0.0, 0.0);
        }
        integrate_numeric(&quadratic_plus_linear, s2, y, 0.0, &inner_cfg())
            .unwrap_or(c(f64::NAN, 0.0))
    };
    let nested = integrate_numeric(&inner, s1, x, 0.0, &cfg())?;
    let direct = integrate_numeric(
        &quadratic_plus_linear,
        ComplexOrder::new(s1.value() + s2.value())?,
        x,
        0.0,
        &inner_cfg(),
    )?;
    Ok(rel(nested, direct))
}

fn semigroup_real(_: &mut ChaCha8Rng) -> Vec<Result<f64>> {
    let (s1, s2) = (ComplexOrder::real(0.7), ComplexOrder::real(0.6));
    [0.5, 1.0, 2.0]
        .into_par_iter()
        .map(|x| nested_integral(s1, s2, x))
        .collect()
}

fn semigroup_complex(_: &mut ChaCha8Rng) -> Vec<Result<f64>> {
    let (s1, s2) = (
        ComplexOrder::from_parts(0.5, 0.25),
        ComplexOrder::from_parts(0.5, -0.25),
    );
    [0.5, 1.0, 2.0]
        .into_par_iter()
        .map(|x| nested_integral(s1, s2, x))
        .collect()
}

/// D^s(J^s x^{1+i}) = x^{1+i}, both operators numeric.
fn left_inverse(_: &mut ChaCha8Rng) -> Vec<Result<f64>> {
    let s = ComplexOrder::from_parts(0.5, 0.25);
    let p = c(1.0, 1.0);
    let f = power(p);
    [0.5, 1.5]
        .into_par_iter()
        .map(|x| {
            let inner = |y: f64| {
                if y <= 0.0 {
                    return c(0.0, 0.0);
                }
                integrate_numeric(&f, s, y, 0.0, &inner_cfg()).unwrap_or(c(f64::NAN, 0.0))
            };
            let got = differentiate_numeric(&inner, s, x, 0.0, 1, &cfg())?;
            Ok(rel(got, complex_pow(x, p)?))
        })
        .collect()
}

/// D^s x^p with k = ⌊Re s⌋+1 and k+1, each against the closed form.
fn k_independence(rng: &mut ChaCha8Rng) -> Vec<Result<f64>> {
    let cases: Vec<_> = (0..25)
        .map(|_| {
            let s = ComplexOrder::from_parts(rng.gen_range(0.05..2.5), rng.gen_range(-1.5..1.5));
            let p = c(rng.gen_range(0.0..3.0), rng.gen_range(-1.5..1.5));
            let x = rng.gen_range(0.5..3.0);
            (s, p, x)
        })
        .collect();
    cases
        .into_par_iter()
        .map(|(s, p, x)| {
            let want = closed_derivative(p, s, x)?;
            let k = s.alpha().floor() as u32 + 1;
            let a = differentiate_numeric(&power(p), s, x, 0.0, k, &cfg())?;
            let b = differentiate_numeric(&power(p), s, x, 0.0, k + 1, &cfg())?;
            Ok(rel(a, want).max(rel(b, want)))
        })
        .collect()
}

/// First central difference of numeric J^s equals numeric J^{s-1}, Re s > 1.
fn derivative_of_integral(_: &mut ChaCha8Rng) -> Vec<Result<f64>> {
    let cases = [
        (c(1.5, 0.5), c(1.0, 1.0), 1.0),
        (c(1.5, 0.5), c(0.0, 0.0), 1.0),
        (c(2.25, -0.75), c(0.5, 0.0), 0.7),
        (c(1.1, 0.0), c(2.0, -0.5), 2.0),
    ];
    cases
        .into_par_iter()
        .map(|(s, p, x)| {
            let f = power(p);
            let s = ComplexOrder::new(s)?;
            let (_, plan) = integrate_numeric_planned(&f, s, x, 0.0, &cfg())?;
            let h = cfg().fd_step_scale * x.max(1.0);
            let d = richardson_derivative(
                |u| integrate_with_plan(&f, s, u, 0.0, plan),
                x,
                1,
                h,
                cfg().richardson_levels,
            )?;
            let direct =
                integrate_numeric(&f, ComplexOrder::new(s.value() - 1.0)?, x, 0.0, &cfg())?;
            Ok(rel(d, direct))
        })
        .collect()
}

/// J^n over (-∞, x] reproduces eˣ for natural n.
fn exp_lower_limit(_: &mut ChaCha8Rng) -> Vec<Result<f64>> {
    let mut out = Vec::new();
    for n in [1.0, 2.0] {
        for x in [0.0, 1.0] {
            out.push(
                integrate_exp_lower_inf(ComplexOrder::real(n), x, &cfg())
                    .map(|v| rel(v, c(f64::exp(x), 0.0))),
            );
        }
    }
    out
}
