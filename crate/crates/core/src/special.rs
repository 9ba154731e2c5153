//! Complex Gamma, log-Gamma, Beta and complex powers of positive reals.
//!
//! `gamma` uses the Lanczos approximation (g = 7, nine coefficients) on the
//! half-plane `Re(z) >= 0.5` and the reflection formula
//! `Γ(z)Γ(1-z) = π / sin(πz)` to the left of it. `log_gamma` returns the
//! principal branch (analytic off the non-positive real axis). Quotients of
//! Gamma values are always formed in log space.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// A complex number `re + i·im`. Every value returned by a successful
/// operation in this crate has finite components.
pub type ComplexScalar = Complex64;

/// Distance from a non-positive integer below which an argument counts as a
/// pole of Γ.
pub const POLE_TOLERANCE: f64 = 1e-9;

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];
// ln(sqrt(2π))
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Sign of the real part of an order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealPartSign {
    Negative,
    Zero,
    Positive,
}

/// The order `s = α + iβ` of an integral or derivative operator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexOrder {
    value: Complex64,
}

impl ComplexOrder {
    pub fn new(value: Complex64) -> Result<Self> {
        if !value.re.is_finite() || !value.im.is_finite() {
            return Err(Error::domain(format!("order {value} is not finite")));
        }
        Ok(Self { value })
    }

    /// A purely real order. Panics on non-finite input.
    pub fn real(alpha: f64) -> Self {
        Self::new(Complex64::new(alpha, 0.0)).expect("finite real order")
    }

    /// Convenience constructor from components. Panics on non-finite input.
    pub fn from_parts(alpha: f64, beta: f64) -> Self {
        Self::new(Complex64::new(alpha, beta)).expect("finite complex order")
    }

    pub fn value(&self) -> Complex64 {
        self.value
    }

    /// Re(s)
    pub fn alpha(&self) -> f64 {
        self.value.re
    }

    /// Im(s)
    pub fn beta(&self) -> f64 {
        self.value.im
    }

    pub fn real_sign(&self) -> RealPartSign {
        if self.value.re > 0.0 {
            RealPartSign::Positive
        } else if self.value.re < 0.0 {
            RealPartSign::Negative
        } else {
            RealPartSign::Zero
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.re == 0.0 && self.value.im == 0.0
    }
}

impl std::ops::Neg for ComplexOrder {
    type Output = ComplexOrder;
    fn neg(self) -> ComplexOrder {
        ComplexOrder { value: -self.value }
    }
}

impl std::fmt::Display for ComplexOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// True when `z` lies within [`POLE_TOLERANCE`] of 0, -1, -2, ...
pub fn is_gamma_pole(z: Complex64) -> bool {
    let n = z.re.round();
    n <= 0.0 && z.im.abs() < POLE_TOLERANCE && (z - n).norm() < POLE_TOLERANCE
}

fn check_finite(z: Complex64, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} is not finite")))
    }
}

// Valid for Re(z) >= 0.5, where it coincides with the principal branch.
fn lanczos_log_gamma(z: Complex64) -> Complex64 {
    let w = z - 1.0;
    let t = w + LANCZOS_G + 0.5;
    let mut series = Complex64::new(LANCZOS_COEF[0], 0.0);
    for (k, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        series += c / (w + k as f64);
    }
    LN_SQRT_2PI + (w + 0.5) * t.ln() - t + series.ln()
}

/// `sin(πz)` with exact reduction of the real part, accurate near the
/// integers.
pub(crate) fn sin_pi(z: Complex64) -> Complex64 {
    let n = z.re.round();
    let r = z.re - n;
    let (s, c) = (PI * r).sin_cos();
    let y = PI * z.im;
    let v = Complex64::new(s * y.cosh(), c * y.sinh());
    if n.rem_euclid(2.0) == 0.0 {
        v
    } else {
        -v
    }
}

/// Principal branch of log Γ(z).
///
/// Left of `Re(z) = 0.5` the value is obtained from the recurrence
/// `lnΓ(z) = lnΓ(z + n) - Σ ln(z + k)` with principal logarithms, which
/// tracks the branch continuously instead of taking the log of Γ.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    check_finite(z, "log_gamma argument")?;
    if is_gamma_pole(z) {
        return Err(Error::Pole(z));
    }
    if z.re >= 0.5 {
        return Ok(lanczos_log_gamma(z));
    }
    let n = (0.5 - z.re).ceil() as u64;
    let mut shift = Complex64::new(0.0, 0.0);
    for k in 0..n {
        shift += (z + k as f64).ln();
    }
    let v = lanczos_log_gamma(z + n as f64) - shift;
    check_finite(v, "log_gamma value")?;
    Ok(v)
}

/// Γ(z) for complex `z` away from the poles.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    check_finite(z, "gamma argument")?;
    if is_gamma_pole(z) {
        return Err(Error::Pole(z));
    }
    let v = if z.re >= 0.5 {
        lanczos_log_gamma(z).exp()
    } else {
        PI / (sin_pi(z) * lanczos_log_gamma(1.0 - z).exp())
    };
    check_finite(v, "gamma value")?;
    Ok(v)
}

/// Arguments whose difference is an integer up to this size use a finite
/// product instead of log-Gamma.
const POCHHAMMER_LIMIT: f64 = 64.0;

/// Γ(num) / Γ(den), evaluated as `exp(lnΓ(num) - lnΓ(den))`, or as the
/// finite product when `den - num` is a small integer (so `Γ(2)/Γ(3)` is
/// exactly `1/2`).
///
/// Returns exactly zero when `den` is a pole, since 1/Γ is entire and
/// vanishes there.
pub fn gamma_ratio(num: Complex64, den: Complex64) -> Result<Complex64> {
    if is_gamma_pole(num) {
        return Err(Error::Pole(num));
    }
    if is_gamma_pole(den) {
        check_finite(num, "gamma_ratio numerator")?;
        return Ok(Complex64::new(0.0, 0.0));
    }
    let d = den - num;
    if d.im == 0.0 && d.re == d.re.round() && d.re.abs() <= POCHHAMMER_LIMIT {
        let n = d.re as i64;
        let v = if n >= 0 {
            1.0 / (0..n).map(|j| num + j as f64).product::<Complex64>()
        } else {
            (1..=-n).map(|j| num - j as f64).product::<Complex64>()
        };
        check_finite(v, "gamma_ratio value")?;
        return Ok(v);
    }
    let v = (log_gamma(num)? - log_gamma(den)?).exp();
    check_finite(v, "gamma_ratio value")?;
    Ok(v)
}

/// B(a, b) = Γ(a)Γ(b)/Γ(a+b), zero when `a + b` is a pole.
pub fn beta(a: Complex64, b: Complex64) -> Result<Complex64> {
    if is_gamma_pole(a) {
        return Err(Error::Pole(a));
    }
    if is_gamma_pole(b) {
        return Err(Error::Pole(b));
    }
    let sum = a + b;
    if is_gamma_pole(sum) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let v = (log_gamma(a)? + log_gamma(b)? - log_gamma(sum)?).exp();
    check_finite(v, "beta value")?;
    Ok(v)
}

/// `x^s = x^Re(s)·(cos(Im(s)·ln x) + i·sin(Im(s)·ln x))` for real `x >= 0`.
pub fn complex_pow(x: f64, s: Complex64) -> Result<Complex64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::domain(format!("complex_pow base {x} is negative")));
    }
    if x == 0.0 {
        return if s.re > 0.0 {
            Ok(Complex64::new(0.0, 0.0))
        } else {
            Err(Error::domain(format!("0^({s}) is undefined")))
        };
    }
    let ln_x = x.ln();
    let magnitude = x.powf(s.re);
    let (sin, cos) = (s.im * ln_x).sin_cos();
    let v = Complex64::new(magnitude * cos, magnitude * sin);
    check_finite(v, "complex_pow value")?;
    Ok(v)
}
