//! Numerical J^s_{x₀} and D^s_{x₀} for arbitrary functions.
//!
//! With `L = x - x₀` and `g(u) = f(x₀ + uL)`,
//!
//! ```text
//! J^s f(x) = L^s / Γ(s) · ∫₀¹ (1-u)^{s-1} g(u) du.
//! ```
//!
//! The kernel `(1-u)^{s-1}` is singular and oscillates without bound as
//! `u → 1`, so it is never sampled there. On `[1/2, 1]` the smooth factor `g`
//! is replaced by its Chebyshev interpolant and integrated exactly against
//! the kernel using moments derived from `μ_k = B(s, k+1)`. On `[0, 1/2]` the
//! kernel is smooth and the integrand is summed with Gauss–Legendre rules on
//! panels that halve towards `u = 0`, which absorbs algebraic or
//! `x^{ib}`-type behaviour of `f` at the lower limit.
//!
//! Derivatives follow `D^s = D^k J^{k-s}`: central differences of the
//! numeric integral with Richardson extrapolation.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::{complex_pow, log_gamma, ComplexOrder};

/// Left panels stop once two successive contributions fall below this
/// fraction of the running total.
const PANEL_CUTOFF: f64 = 1e-17;
const MIN_PANELS: usize = 4;
const MAX_PANELS: usize = 1000;
/// Panel count used by the fixed-degree entry points.
pub const FIXED_PANELS: usize = 120;
/// Extra panels added when a plan is frozen for finite differencing.
const PLAN_PANEL_MARGIN: usize = 8;

/// Tuning knobs for the numeric backend.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    /// Starting Chebyshev degree on the kernel panel.
    pub degree: usize,
    /// Degree at which doubling stops.
    pub max_degree: usize,
    /// Successive-estimate agreement required for convergence.
    pub rel_tol: f64,
    /// First-order finite-difference step is `fd_step_scale · max(1, |x|)`;
    /// it doubles with each further order.
    pub fd_step_scale: f64,
    /// Number of step sizes (h, h/2, h/4, ...) in the Richardson table.
    pub richardson_levels: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            degree: 32,
            max_degree: 256,
            rel_tol: 1e-9,
            fd_step_scale: 1e-2,
            richardson_levels: 3,
        }
    }
}

impl QuadConfig {
    pub fn validate(&self) -> Result<()> {
        if self.degree < 2 || self.degree > self.max_degree {
            return Err(Error::domain(format!(
                "degree {} must lie in [2, max_degree = {}]",
                self.degree, self.max_degree
            )));
        }
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(Error::domain("rel_tol must be positive"));
        }
        if !(self.fd_step_scale > 0.0 && self.fd_step_scale.is_finite()) {
            return Err(Error::domain("fd_step_scale must be positive"));
        }
        if self.richardson_levels == 0 {
            return Err(Error::domain("richardson_levels must be at least 1"));
        }
        Ok(())
    }
}

/// Moments `μ_k = ∫₀¹ (1-u)^{s-1} u^k du = B(s, k+1)` of the kernel.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    order: ComplexOrder,
    moments: Vec<Complex64>,
}

/// `μ₀ = 1/s`, `μ_{k+1} = μ_k (k+1)/(s+k+1)`.
pub fn build_moments(s: ComplexOrder, count: usize) -> Result<MomentTable> {
    if s.alpha() <= 0.0 {
        return Err(Error::domain(format!(
            "moment order {s} must have positive real part"
        )));
    }
    if count == 0 {
        return Err(Error::domain("moment count must be at least 1"));
    }
    let sv = s.value();
    let mut moments = Vec::with_capacity(count);
    moments.push(1.0 / sv);
    for k in 1..count {
        let prev = moments[k - 1];
        moments.push(prev * k as f64 / (sv + k as f64));
    }
    Ok(MomentTable { order: s, moments })
}

impl MomentTable {
    pub fn order(&self) -> ComplexOrder {
        self.order
    }

    pub fn count(&self) -> usize {
        self.moments.len()
    }

    pub fn moments(&self) -> &[Complex64] {
        &self.moments
    }

    /// `ν_j = ∫₀¹ (1-v)^{s-1} T_j(2v-1) dv` for `j = 0..=degree`.
    ///
    /// Seeded from `μ₀, μ₁, μ₂` and continued with the three-term relation
    ///
    /// ```text
    /// ν_{n+1}(s+n+1)/(n+1) = 2ν_n - ν_{n-1}(n-s-1)/(n-1) + 2(-1)^n/(n²-1),
    /// ```
    ///
    /// which follows from integrating `(1-v)^s T_n'` by parts. Expanding
    /// `T_j(2v-1)` in monomials instead loses about `log10(5.8^j)` digits.
    pub fn shifted_chebyshev_moments(&self, degree: usize) -> Vec<Complex64> {
        let s = self.order.value();
        let mu = |k: usize| -> Complex64 {
            if k < self.moments.len() {
                self.moments[k]
            } else {
                let mut m = self.moments[self.moments.len() - 1];
                for j in self.moments.len() - 1..k {
                    m = m * (j + 1) as f64 / (s + (j + 1) as f64);
                }
                m
            }
        };
        let (m0, m1, m2) = (mu(0), mu(1), mu(2));
        let mut nu = vec![m0, 2.0 * m1 - m0, 8.0 * m2 - 8.0 * m1 + m0];
        nu.truncate(degree + 1);
        for n in 2..degree {
            let nf = n as f64;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let rhs = 2.0 * nu[n] - nu[n - 1] * (nf - s - 1.0) / (nf - 1.0)
                + 2.0 * sign / (nf * nf - 1.0);
            nu.push(rhs * (nf + 1.0) / (s + nf + 1.0));
        }
        nu
    }
}

/// Nodes and weights of the m-point Gauss–Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub(crate) struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub(crate) fn new(m: usize) -> Self {
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        let mf = m as f64;
        for i in 0..m.div_ceil(2) {
            let mut z = (PI * (i as f64 + 0.75) / (mf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, z);
                for k in 2..=m {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                if m == 1 {
                    p0 = 1.0;
                }
                dp = mf * (z * p1 - p0) / (z * z - 1.0);
                let dz = p1 / dp;
                z -= dz;
                if dz.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - z * z) * dp * dp);
            nodes[i] = -z;
            nodes[m - 1 - i] = z;
            weights[i] = w;
            weights[m - 1 - i] = w;
        }
        Self { nodes, weights }
    }
}

/// Chebyshev grid of degree `n` on [0, 1] (first-kind points, so the
/// endpoints are never sampled).
struct ChebyshevGrid {
    degree: usize,
    points: Vec<f64>,
    // cos(π m / (2(n+1))) for m in 0..4(n+1)
    cos_table: Vec<f64>,
}

impl ChebyshevGrid {
    fn new(degree: usize) -> Self {
        let np = degree + 1;
        let points = (0..np)
            .map(|k| 0.5 * (1.0 + (PI * (k as f64 + 0.5) / np as f64).cos()))
            .collect();
        let cos_table = (0..4 * np)
            .map(|m| (PI * m as f64 / (2 * np) as f64).cos())
            .collect();
        Self {
            degree,
            points,
            cos_table,
        }
    }

    /// Chebyshev coefficients of the interpolant through `values`.
    fn coefficients(&self, values: &[Complex64]) -> Vec<Complex64> {
        let np = self.degree + 1;
        let period = 4 * np;
        (0..np)
            .map(|j| {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, v) in values.iter().enumerate() {
                    acc += v * self.cos_table[(j * (2 * k + 1)) % period];
                }
                let scale = if j == 0 { 1.0 } else { 2.0 };
                acc * (scale / np as f64)
            })
            .collect()
    }
}

/// Resolution used for one evaluation of the integral: Chebyshev degree on
/// the kernel panel and number of graded panels on `[0, 1/2]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadPlan {
    pub degree: usize,
    pub panels: usize,
}

#[derive(Clone, Copy)]
enum Panels {
    Adaptive,
    Fixed(usize),
}

/// Precomputed kernel data for one order `s`.
struct Kernel {
    s: Complex64,
    log_gamma_s: Complex64,
    cheb_moments: Vec<Complex64>,
}

impl Kernel {
    fn new(s: ComplexOrder, max_degree: usize) -> Result<Self> {
        let table = build_moments(s, 3)?;
        Ok(Self {
            s: s.value(),
            log_gamma_s: log_gamma(s.value())?,
            cheb_moments: table.shifted_chebyshev_moments(max_degree),
        })
    }

    /// `∫₀¹ (1-u)^{s-1} g(u) du`; returns the value and the panel count used.
    fn unit_integral<G>(
        &self,
        g: G,
        grid: &ChebyshevGrid,
        rule: &GaussLegendre,
        panels: Panels,
        u_min: f64,
    ) -> (Complex64, usize)
    where
        G: Fn(f64) -> Complex64,
    {
        // kernel panel [1/2, 1]: (1-u) = (1-v)/2, du = dv/2
        let values: Vec<Complex64> = grid.points.iter().map(|&v| g(0.5 + 0.5 * v)).collect();
        let coefs = grid.coefficients(&values);
        let right: Complex64 = coefs
            .iter()
            .zip(&self.cheb_moments)
            .map(|(c, nu)| c * nu)
            .sum::<Complex64>()
            * (-self.s * std::f64::consts::LN_2).exp();

        let sm1 = self.s - 1.0;
        let mut total = right;
        let mut small_run = 0;
        let mut used = 0;
        let limit = match panels {
            Panels::Adaptive => MAX_PANELS,
            Panels::Fixed(n) => n,
        };
        let mut hi = 0.5;
        while used < limit {
            let lo = 0.5 * hi;
            if lo < u_min {
                break;
            }
            let (mid, half) = (0.5 * (hi + lo), 0.5 * (hi - lo));
            let mut part = Complex64::new(0.0, 0.0);
            for (t, w) in rule.nodes.iter().zip(&rule.weights) {
                let u = mid + half * t;
                let kernel = complex_pow(1.0 - u, sm1).unwrap_or_default();
                part += kernel * g(u) * *w;
            }
            part *= half;
            total += part;
            used += 1;
            hi = lo;
            if let Panels::Adaptive = panels {
                if part.norm() <= PANEL_CUTOFF * total.norm() {
                    small_run += 1;
                } else {
                    small_run = 0;
                }
                if used >= MIN_PANELS && small_run >= 2 {
                    break;
                }
            }
        }
        (total, used)
    }
}

fn check_integral_args(s: ComplexOrder, x: f64, x0: f64) -> Result<()> {
    if s.alpha() <= 0.0 {
        return Err(Error::domain(format!(
            "integral order {s} must have positive real part"
        )));
    }
    if !x.is_finite() || !x0.is_finite() {
        return Err(Error::domain("integration limits must be finite"));
    }
    if x <= x0 {
        return Err(Error::domain(format!(
            "x = {x} must exceed the lower limit {x0}"
        )));
    }
    Ok(())
}

/// Smallest usable u: below it `x₀ + uL` no longer resolves from `x₀`.
fn u_floor(x: f64, x0: f64) -> f64 {
    let len = x - x0;
    (8.0 * f64::EPSILON * x0.abs() / len).max(1e-290)
}

fn prefactor(kernel: &Kernel, len: f64) -> Complex64 {
    (kernel.s * len.ln() - kernel.log_gamma_s).exp()
}

fn gl_points(degree: usize) -> usize {
    (degree / 2).max(8)
}

fn evaluate_with<F>(
    f: &F,
    kernel: &Kernel,
    x: f64,
    x0: f64,
    degree: usize,
    panels: Panels,
) -> (Complex64, usize)
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    let len = x - x0;
    let grid = ChebyshevGrid::new(degree);
    let rule = GaussLegendre::new(gl_points(degree));
    let (unit, used) =
        kernel.unit_integral(|u| f(x0 + u * len), &grid, &rule, panels, u_floor(x, x0));
    (prefactor(kernel, len) * unit, used)
}

/// Adaptive J^s_{x₀} f(x) that also reports the plan it converged with.
pub fn integrate_numeric_planned<F>(
    f: &F,
    s: ComplexOrder,
    x: f64,
    x0: f64,
    cfg: &QuadConfig,
) -> Result<(Complex64, QuadPlan)>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    cfg.validate()?;
    check_integral_args(s, x, x0)?;
    let kernel = Kernel::new(s, cfg.max_degree)?;

    let mut degrees = Vec::new();
    let mut n = cfg.degree;
    if n == cfg.max_degree {
        degrees.push((n / 2).max(2));
    }
    loop {
        degrees.push(n);
        if n >= cfg.max_degree {
            break;
        }
        n = (2 * n).min(cfg.max_degree);
    }

    let mut previous: Option<Complex64> = None;
    let mut last_err = f64::INFINITY;
    let mut last = (
        Complex64::new(0.0, 0.0),
        QuadPlan {
            degree: cfg.degree,
            panels: 0,
        },
    );
    for &degree in &degrees {
        let (value, panels) = evaluate_with(f, &kernel, x, x0, degree, Panels::Adaptive);
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::domain(format!(
                "non-finite integrand or result at x = {x}"
            )));
        }
        let plan = QuadPlan { degree, panels };
        if let Some(prev) = previous {
            let diff = (value - prev).norm();
            let scale = value.norm();
            last_err = if scale > 0.0 { diff / scale } else { diff };
            if diff <= cfg.rel_tol * scale || (diff == 0.0) {
                return Ok((value, plan));
            }
        }
        previous = Some(value);
        last = (value, plan);
    }
    Err(Error::Convergence {
        estimate: last.0,
        error: last_err,
    })
}

/// J^s_{x₀} f(x) for `Re(s) > 0`, `x > x₀`, `f` bounded on `[x₀, x]`.
///
/// Doubles the degree from `cfg.degree` until two successive estimates agree
/// to `cfg.rel_tol`; fails with [`Error::Convergence`] (carrying the last
/// estimate) if `cfg.max_degree` is reached first.
pub fn integrate_numeric<F>(
    f: &F,
    s: ComplexOrder,
    x: f64,
    x0: f64,
    cfg: &QuadConfig,
) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    integrate_numeric_planned(f, s, x, x0, cfg).map(|(v, _)| v)
}

/// J^s_{x₀} f(x) with a frozen plan. Smooth in `x` and exactly linear in the
/// samples of `f`.
pub fn integrate_with_plan<F>(
    f: &F,
    s: ComplexOrder,
    x: f64,
    x0: f64,
    plan: QuadPlan,
) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    check_integral_args(s, x, x0)?;
    if plan.degree < 2 {
        return Err(Error::domain("plan degree must be at least 2"));
    }
    let kernel = Kernel::new(s, plan.degree)?;
    Ok(evaluate_with(f, &kernel, x, x0, plan.degree, Panels::Fixed(plan.panels)).0)
}

/// J^s_{x₀} f(x) at a single fixed degree with [`FIXED_PANELS`] panels.
pub fn integrate_numeric_fixed<F>(
    f: &F,
    s: ComplexOrder,
    x: f64,
    x0: f64,
    degree: usize,
) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    integrate_with_plan(
        f,
        s,
        x,
        x0,
        QuadPlan {
            degree,
            panels: FIXED_PANELS,
        },
    )
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// k-th derivative at `x` by central differences
/// `h^{-k} Σ_j (-1)^j C(k,j) F(x + (k/2 - j)h)` over steps `h, h/2, ...`
/// (`levels` of them), Richardson-extrapolated in powers of `h²`.
pub fn richardson_derivative<F>(g: F, x: f64, k: u32, h: f64, levels: usize) -> Result<Complex64>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if k == 0 {
        return g(x);
    }
    if levels == 0 || h.is_nan() || h <= 0.0 {
        return Err(Error::domain("need a positive step and at least one level"));
    }
    let mut table: Vec<Vec<Complex64>> = Vec::with_capacity(levels);
    for level in 0..levels {
        let step = h / (1u64 << level) as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for j in 0..=k {
            let offset = (k as f64 / 2.0 - j as f64) * step;
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            acc += g(x + offset)? * (sign * binomial(k, j));
        }
        let mut row = vec![acc / step.powi(k as i32)];
        for m in 1..=level {
            let factor = 4f64.powi(m as i32);
            let prev = table[level - 1][m - 1];
            let cur = row[m - 1];
            row.push(cur + (cur - prev) / (factor - 1.0));
        }
        table.push(row);
    }
    Ok(table[levels - 1][levels - 1])
}

/// Base step for a k-th difference at `x`. Doubling per extra order keeps the
/// finest Richardson step above the rounding noise of the inner integral.
fn fd_step(cfg: &QuadConfig, x: f64, k: u32) -> f64 {
    cfg.fd_step_scale * x.abs().max(1.0) * 2f64.powi(k.saturating_sub(1).min(30) as i32)
}

fn check_derivative_args(s: ComplexOrder, k: u32) -> Result<ComplexOrder> {
    if s.alpha() < 0.0 || s.is_zero() {
        return Err(Error::domain(format!(
            "derivative order {s} must have Re >= 0 and be nonzero"
        )));
    }
    if k as f64 <= s.alpha() {
        return Err(Error::domain(format!(
            "k = {k} must exceed Re(s) = {}",
            s.alpha()
        )));
    }
    ComplexOrder::new(Complex64::new(k as f64, 0.0) - s.value())
}

/// D^s_{x₀} f(x) = D^k J^{k-s}_{x₀} f(x), with `k > Re(s)`.
///
/// The inner integral is first converged at `x`; its plan is then frozen so
/// that the stencil differences a function that is smooth in `x`. The base
/// step is `fd_step_scale · max(1, |x|) · 2^{k-1}`; the stencil must stay
/// inside `(x₀, ∞)`.
pub fn differentiate_numeric<F>(
    f: &F,
    s: ComplexOrder,
    x: f64,
    x0: f64,
    k: u32,
    cfg: &QuadConfig,
) -> Result<Complex64>
where
    F: Fn(f64) -> Complex64 + ?Sized,
{
    cfg.validate()?;
    let inner = check_derivative_args(s, k)?;
    let h = fd_step(cfg, x, k);
    if !x.is_finite() || x - (k as f64 / 2.0) * h <= x0 {
        return Err(Error::domain(format!(
            "difference stencil at x = {x} (step {h}, k = {k}) leaves the domain x > {x0}"
        )));
    }
    let (_, plan) = integrate_numeric_planned(f, inner, x, x0, cfg)?;
    let frozen = QuadPlan {
        degree: plan.degree,
        panels: plan.panels + PLAN_PANEL_MARGIN,
    };
    richardson_derivative(
        |u| integrate_with_plan(f, inner, u, x0, frozen),
        x,
        k,
        h,
        cfg.richardson_levels,
    )
}

/// Lower-limit offset used in place of `-∞`.
pub fn exp_truncation(s: ComplexOrder) -> f64 {
    40.0 + 10.0 * s.beta().abs()
}

/// J^s_{-∞} eˣ, integrated over `[x - T, x]` with `T = 40 + 10|Im s|`.
pub fn integrate_exp_lower_inf(s: ComplexOrder, x: f64, cfg: &QuadConfig) -> Result<Complex64> {
    let x0 = x - exp_truncation(s);
    integrate_numeric(&|y: f64| Complex64::new(y.exp(), 0.0), s, x, x0, cfg)
}

/// D^s_{-∞} eˣ = D^k J^{k-s}_{-∞} eˣ with the same truncation, moving with x.
pub fn differentiate_exp_lower_inf(
    s: ComplexOrder,
    x: f64,
    k: u32,
    cfg: &QuadConfig,
) -> Result<Complex64> {
    cfg.validate()?;
    let inner = check_derivative_args(s, k)?;
    let t = exp_truncation(inner);
    let exp = |y: f64| Complex64::new(y.exp(), 0.0);
    let (_, plan) = integrate_numeric_planned(&exp, inner, x, x - t, cfg)?;
    let frozen = QuadPlan {
        degree: plan.degree,
        panels: plan.panels + PLAN_PANEL_MARGIN,
    };
    let h = fd_step(cfg, x, k);
    richardson_derivative(
        |u| integrate_with_plan(&exp, inner, u, u - t, frozen),
        x,
        k,
        h,
        cfg.richardson_levels,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::beta;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn moments_examples() {
        let t = build_moments(ComplexOrder::real(1.0), 3).unwrap();
        let want = [1.0, 0.5, 1.0 / 3.0];
        for (m, w) in t.moments().iter().zip(want) {
            assert!((m - c(w, 0.0)).norm() < 1e-16);
        }
        let t = build_moments(ComplexOrder::real(2.0), 2).unwrap();
        assert!((t.moments()[0] - c(0.5, 0.0)).norm() < 1e-16);
        assert!((t.moments()[1] - c(1.0 / 6.0, 0.0)).norm() < 1e-16);
        assert!(build_moments(ComplexOrder::from_parts(0.0, 1.0), 4).is_err());
        assert!(build_moments(ComplexOrder::real(1.0), 0).is_err());
    }

    #[test]
    fn moments_match_beta() {
        let s = ComplexOrder::from_parts(0.5, 0.5);
        let t = build_moments(s, 8).unwrap();
        for (k, m) in t.moments().iter().enumerate() {
            let b = beta(s.value(), c(k as f64 + 1.0, 0.0)).unwrap();
            assert!(rel(*m, b) < 1e-13, "k = {k}");
        }
    }

    #[test]
    fn chebyshev_moments_low_degree() {
        // ν_j by direct expansion of T_j(2v-1) for small j
        let s = ComplexOrder::from_parts(1.3, -0.7);
        let t = build_moments(s, 6).unwrap();
        let mu = t.moments();
        let nu = t.shifted_chebyshev_moments(5);
        let direct = [
            mu[0],
            2.0 * mu[1] - mu[0],
            8.0 * mu[2] - 8.0 * mu[1] + mu[0],
            32.0 * mu[3] - 48.0 * mu[2] + 18.0 * mu[1] - mu[0],
            128.0 * mu[4] - 256.0 * mu[3] + 160.0 * mu[2] - 32.0 * mu[1] + mu[0],
            512.0 * mu[5] - 1280.0 * mu[4] + 1120.0 * mu[3] - 400.0 * mu[2] + 50.0 * mu[1] - mu[0],
        ];
        for (j, (a, b)) in nu.iter().zip(direct).enumerate() {
            assert!((a - b).norm() < 1e-13, "j = {j}: {a} vs {b}");
        }
    }

    #[test]
    fn gauss_legendre_exact_for_polynomials() {
        let rule = GaussLegendre::new(5);
        let int: f64 = rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(x, w)| w * x.powi(8))
            .sum();
        assert!((int - 2.0 / 9.0).abs() < 1e-15);
        let sum: f64 = GaussLegendre::new(64).weights.iter().sum();
        assert!((sum - 2.0).abs() < 1e-13);
    }

    #[test]
    fn integrate_examples() {
        let cfg = QuadConfig::default();
        let x = |y: f64| c(y, 0.0);
        let v = integrate_numeric(&x, ComplexOrder::real(0.5), 1.0, 0.0, &cfg).unwrap();
        assert!(rel(v, c(0.7522527780636751, 0.0)) < 1e-12);
        let one = |_: f64| c(1.0, 0.0);
        let v = integrate_numeric(&one, ComplexOrder::real(1.0), 2.0, 0.0, &cfg).unwrap();
        assert!(rel(v, c(2.0, 0.0)) < 1e-13);
    }

    #[test]
    fn integrate_argument_errors() {
        let cfg = QuadConfig::default();
        let one = |_: f64| c(1.0, 0.0);
        assert!(matches!(
            integrate_numeric(&one, ComplexOrder::real(1.0), 0.0, 0.0, &cfg),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            integrate_numeric(&one, ComplexOrder::from_parts(0.0, 1.0), 1.0, 0.0, &cfg),
            Err(Error::Domain(_))
        ));
        let bad = QuadConfig { degree: 512, ..cfg };
        assert!(integrate_numeric(&one, ComplexOrder::real(1.0), 1.0, 0.0, &bad).is_err());
    }

    #[test]
    fn convergence_error_carries_estimate() {
        // a jump inside the interval defeats the spectral rule
        let step = |y: f64| if y > 0.7 { c(1.0, 0.0) } else { c(0.0, 0.0) };
        let cfg = QuadConfig {
            rel_tol: 1e-14,
            max_degree: 64,
            ..Default::default()
        };
        match integrate_numeric(&step, ComplexOrder::real(1.0), 1.0, 0.0, &cfg) {
            Err(Error::Convergence { estimate, error }) => {
                assert!((estimate.re - 0.3).abs() < 0.05);
                assert!(error > 1e-14);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn richardson_on_smooth_function() {
        let g = |x: f64| Ok(c(x.sin(), x.cos()));
        let d1 = richardson_derivative(g, 0.3, 1, 0.01, 3).unwrap();
        assert!((d1 - c(0.3f64.cos(), -0.3f64.sin())).norm() < 1e-12);
        let d2 = richardson_derivative(g, 0.3, 2, 0.01, 3).unwrap();
        assert!((d2 - c(-0.3f64.sin(), -0.3f64.cos())).norm() < 1e-9);
    }

    #[test]
    fn differentiate_examples() {
        let cfg = QuadConfig::default();
        let x = |y: f64| c(y, 0.0);
        let v = differentiate_numeric(&x, ComplexOrder::real(0.5), 1.0, 0.0, 1, &cfg).unwrap();
        assert!(
            rel(v, c(std::f64::consts::FRAC_2_SQRT_PI, 0.0)) < 1e-8,
            "{v}"
        );
        let sq = |y: f64| c(y * y, 0.0);
        let v = differentiate_numeric(&sq, ComplexOrder::real(1.0), 3.0, 0.0, 2, &cfg).unwrap();
        assert!(rel(v, c(6.0, 0.0)) < 1e-8, "{v}");
    }

    #[test]
    fn differentiate_stencil_and_k_checks() {
        let cfg = QuadConfig::default();
        let x = |y: f64| c(y, 0.0);
        assert!(matches!(
            differentiate_numeric(&x, ComplexOrder::real(0.5), 0.004, 0.0, 1, &cfg),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            differentiate_numeric(&x, ComplexOrder::real(1.5), 1.0, 0.0, 1, &cfg),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn exp_lower_infinity_integer_orders() {
        let cfg = QuadConfig::default();
        let v = integrate_exp_lower_inf(ComplexOrder::real(1.0), 0.0, &cfg).unwrap();
        assert!(rel(v, c(1.0, 0.0)) < 1e-10, "{v}");
        let v = integrate_exp_lower_inf(ComplexOrder::real(2.0), 1.0, &cfg).unwrap();
        assert!(rel(v, c(std::f64::consts::E, 0.0)) < 1e-10, "{v}");
    }
}
