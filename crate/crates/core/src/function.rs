//! Functions the operators act on.
//!
//! A [`CausalFunction`] is a finite sum of complex power terms
//! `c·(x - x₀)^p` that vanishes for `x <= x₀`, or (with `x₀ = -∞`) a multiple
//! of `eˣ`. An [`OpaqueFunction`] wraps an arbitrary callable for the
//! numeric backends.
//!
//! Expression grammar accepted by [`parse_function`]:
//!
//! ```text
//! expr    := term { ("+" | "-") term }
//! term    := [ complex "*" ] atom
//! atom    := "x^" complex | "x" | "1" | "exp(x)"
//! complex := "(" float [ ("+"|"-") float "i" ] ")" | float
//! ```

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lexer::{format_complex, format_f64, Cursor};
use crate::special::complex_pow;

/// Componentwise tolerance under which two exponents are the same exponent.
pub const EXPONENT_MERGE_TOLERANCE: f64 = 1e-12;

/// Left endpoint x₀ of the integration range.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LowerLimit {
    Finite(f64),
    NegInfinity,
}

impl LowerLimit {
    pub fn finite(self) -> Option<f64> {
        match self {
            LowerLimit::Finite(x0) => Some(x0),
            LowerLimit::NegInfinity => None,
        }
    }

    /// Parses a float or `-inf`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if t.eq_ignore_ascii_case("-inf") || t.eq_ignore_ascii_case("-infinity") {
            return Ok(LowerLimit::NegInfinity);
        }
        let mut cur = Cursor::new(t);
        let v = cur.float()?;
        if !cur.at_end() {
            return Err(cur.error("end of lower limit"));
        }
        Ok(LowerLimit::Finite(v))
    }
}

impl Default for LowerLimit {
    fn default() -> Self {
        LowerLimit::Finite(0.0)
    }
}

impl fmt::Display for LowerLimit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LowerLimit::Finite(x0) => f.write_str(&format_f64(*x0)),
            LowerLimit::NegInfinity => f.write_str("-inf"),
        }
    }
}

/// `coef · (x - x₀)^exponent`
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerTerm {
    pub coef: Complex64,
    pub exponent: Complex64,
}

impl PowerTerm {
    pub fn new(coef: Complex64, exponent: Complex64) -> Self {
        Self { coef, exponent }
    }
}

/// A causal function: zero on `x <= x₀`, a power sum in `x - x₀` above it.
#[derive(Debug, Clone, PartialEq)]
pub struct CausalFunction {
    terms: Vec<PowerTerm>,
    exp_coef: Complex64,
    lower_limit: LowerLimit,
}

fn same_exponent(a: Complex64, b: Complex64) -> bool {
    (a.re - b.re).abs() <= EXPONENT_MERGE_TOLERANCE
        && (a.im - b.im).abs() <= EXPONENT_MERGE_TOLERANCE
}

/// Merge equal exponents, drop zero coefficients, sort by (Re, Im).
fn canonicalize(terms: impl IntoIterator<Item = PowerTerm>) -> Vec<PowerTerm> {
    let mut out: Vec<PowerTerm> = Vec::new();
    // adding +0.0 turns -0.0 into +0.0
    let unsigned_zero = |z: Complex64| Complex64::new(z.re + 0.0, z.im + 0.0);
    for t in terms {
        let t = PowerTerm::new(unsigned_zero(t.coef), unsigned_zero(t.exponent));
        match out
            .iter_mut()
            .find(|o| same_exponent(o.exponent, t.exponent))
        {
            Some(o) => o.coef += t.coef,
            None => out.push(t),
        }
    }
    out.retain(|t| t.coef != Complex64::new(0.0, 0.0));
    out.sort_by(|a, b| {
        a.exponent
            .re
            .total_cmp(&b.exponent.re)
            .then(a.exponent.im.total_cmp(&b.exponent.im))
    });
    out
}

fn check_finite(z: Complex64, what: &str) -> Result<()> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} {z} is not finite")))
    }
}

impl CausalFunction {
    /// Power sum with a finite lower limit. Every exponent must satisfy
    /// `Re(p) > -1`.
    pub fn new(terms: Vec<PowerTerm>, lower_limit: f64) -> Result<Self> {
        if !lower_limit.is_finite() {
            return Err(Error::domain("power terms need a finite lower limit"));
        }
        for t in &terms {
            check_finite(t.coef, "coefficient")?;
            check_finite(t.exponent, "exponent")?;
            if t.exponent.re <= -1.0 {
                return Err(Error::domain(format!(
                    "exponent {} must have real part > -1",
                    t.exponent
                )));
            }
        }
        Ok(Self {
            terms: canonicalize(terms),
            exp_coef: Complex64::new(0.0, 0.0),
            lower_limit: LowerLimit::Finite(lower_limit),
        })
    }

    /// `coef · (x - x₀)^exponent` with `x₀ = 0`.
    pub fn power(coef: Complex64, exponent: Complex64) -> Result<Self> {
        Self::new(vec![PowerTerm::new(coef, exponent)], 0.0)
    }

    /// `coef · eˣ` on `x₀ = -∞`.
    pub fn exponential(coef: Complex64) -> Result<Self> {
        check_finite(coef, "coefficient")?;
        Ok(Self {
            terms: Vec::new(),
            exp_coef: coef,
            lower_limit: LowerLimit::NegInfinity,
        })
    }

    pub fn zero(lower_limit: LowerLimit) -> Self {
        Self {
            terms: Vec::new(),
            exp_coef: Complex64::new(0.0, 0.0),
            lower_limit,
        }
    }

    /// Results of differentiation may carry exponents with `Re(p) <= -1`;
    /// they evaluate normally for `x > x₀` but are not valid inputs to `J`.
    pub(crate) fn from_parts(
        terms: Vec<PowerTerm>,
        exp_coef: Complex64,
        lower_limit: LowerLimit,
    ) -> Self {
        Self {
            terms: canonicalize(terms),
            exp_coef,
            lower_limit,
        }
    }

    /// Moves the function to another lower limit. Power terms need a finite
    /// limit and the exponential term needs `-∞`.
    pub fn with_lower_limit(mut self, lower_limit: LowerLimit) -> Result<Self> {
        match lower_limit {
            LowerLimit::Finite(x0) => {
                if !x0.is_finite() {
                    return Err(Error::domain("lower limit must be finite or -inf"));
                }
                if self.has_exp_term() {
                    return Err(Error::domain("exp(x) requires the lower limit -inf"));
                }
            }
            LowerLimit::NegInfinity => {
                if !self.terms.is_empty() {
                    return Err(Error::domain("power terms require a finite lower limit"));
                }
            }
        }
        self.lower_limit = lower_limit;
        Ok(self)
    }

    pub fn terms(&self) -> &[PowerTerm] {
        &self.terms
    }

    pub fn exp_coef(&self) -> Complex64 {
        self.exp_coef
    }

    pub fn has_exp_term(&self) -> bool {
        self.lower_limit == LowerLimit::NegInfinity
    }

    pub fn lower_limit(&self) -> LowerLimit {
        self.lower_limit
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.exp_coef == Complex64::new(0.0, 0.0)
    }

    /// Value at `x`; exactly zero for `x <= x₀`.
    pub fn evaluate(&self, x: f64) -> Result<Complex64> {
        let x0 = match self.lower_limit {
            LowerLimit::NegInfinity => return Ok(self.exp_coef * x.exp()),
            LowerLimit::Finite(x0) => x0,
        };
        if x < x0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if x == x0 {
            if let Some(t) = self.terms.iter().find(|t| t.exponent.re < 0.0) {
                return Err(Error::domain(format!(
                    "term with exponent {} is unbounded at the lower limit",
                    t.exponent
                )));
            }
            return Ok(Complex64::new(0.0, 0.0));
        }
        let dx = x - x0;
        let mut sum = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            sum += t.coef * complex_pow(dx, t.exponent)?;
        }
        Ok(sum)
    }

    /// Pointwise value for quadrature: like [`evaluate`](Self::evaluate) but
    /// returns zero instead of an error at the lower limit itself.
    pub fn sample(&self, x: f64) -> Complex64 {
        self.evaluate(x).unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Canonical textual form accepted by [`parse_function`].
    pub fn render(&self) -> String {
        if self.has_exp_term() {
            return format!("{}*exp(x)", format_complex(self.exp_coef));
        }
        if self.terms.is_empty() {
            return "(0+0i)*1".to_string();
        }
        self.terms
            .iter()
            .map(|t| {
                format!(
                    "{}*x^{}",
                    format_complex(t.coef),
                    format_complex(t.exponent)
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for CausalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Free-function form of [`CausalFunction::evaluate`].
pub fn evaluate(f: &CausalFunction, x: f64) -> Result<Complex64> {
    f.evaluate(x)
}

/// A caller-supplied function, assumed bounded on every compact `[x₀, x]`.
/// Values for `x <= x₀` are forced to zero.
#[derive(Clone)]
pub struct OpaqueFunction {
    callable: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
    lower_limit: f64,
}

impl OpaqueFunction {
    pub fn new<F>(lower_limit: f64, callable: F) -> Self
    where
        F: Fn(f64) -> Complex64 + Send + Sync + 'static,
    {
        Self {
            callable: Arc::new(callable),
            lower_limit,
        }
    }

    pub fn lower_limit(&self) -> f64 {
        self.lower_limit
    }

    pub fn evaluate(&self, x: f64) -> Complex64 {
        if x <= self.lower_limit {
            Complex64::new(0.0, 0.0)
        } else {
            (self.callable)(x)
        }
    }
}

impl fmt::Debug for OpaqueFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OpaqueFunction")
            .field("lower_limit", &self.lower_limit)
            .finish()
    }
}

enum Atom {
    Power(Complex64),
    Exp,
}

fn parse_atom(cur: &mut Cursor<'_>) -> Result<Atom> {
    if cur.eat_word("exp") {
        cur.expect(b'(', "'(' after exp")?;
        cur.expect(b'x', "'x' in exp(x)")?;
        cur.expect(b')', "')' closing exp(x)")?;
        return Ok(Atom::Exp);
    }
    if cur.eat(b'x') {
        if cur.eat(b'^') {
            return Ok(Atom::Power(cur.complex()?));
        }
        return Ok(Atom::Power(Complex64::new(1.0, 0.0)));
    }
    if cur.starts_number() {
        let at = cur.pos();
        let v = cur.float()?;
        if v != 1.0 {
            return Err(Error::Parse {
                offset: at,
                expected: "'1', 'x', 'x^' or 'exp(x)'".into(),
            });
        }
        return Ok(Atom::Power(Complex64::new(0.0, 0.0)));
    }
    Err(cur.error("'x', 'x^', '1' or 'exp(x)'"))
}

fn parse_term(cur: &mut Cursor<'_>) -> Result<(Complex64, Atom)> {
    if cur.starts_number() {
        let coef = cur.complex()?;
        if cur.eat(b'*') {
            return Ok((coef, parse_atom(cur)?));
        }
        // bare constant
        return Ok((coef, Atom::Power(Complex64::new(0.0, 0.0))));
    }
    Ok((Complex64::new(1.0, 0.0), parse_atom(cur)?))
}

/// Parses a function expression. The lower limit is `0` for power sums and
/// `-∞` when the expression is an `exp(x)` multiple; use
/// [`CausalFunction::with_lower_limit`] to move a power sum.
pub fn parse_function(text: &str) -> Result<CausalFunction> {
    let mut cur = Cursor::new(text);
    let mut sign = if cur.eat(b'-') {
        -1.0
    } else {
        cur.eat(b'+');
        1.0
    };
    let mut terms = Vec::new();
    let mut exp_coef = Complex64::new(0.0, 0.0);
    let mut has_exp = false;
    loop {
        let (coef, atom) = parse_term(&mut cur)?;
        match atom {
            Atom::Power(p) => terms.push(PowerTerm::new(sign * coef, p)),
            Atom::Exp => {
                has_exp = true;
                exp_coef += sign * coef;
            }
        }
        if cur.eat(b'+') {
            sign = 1.0;
        } else if cur.eat(b'-') {
            sign = -1.0;
        } else if cur.at_end() {
            break;
        } else {
            return Err(cur.error("'+', '-' or end of input"));
        }
    }
    if has_exp {
        if !terms.is_empty() {
            return Err(Error::domain(
                "exp(x) cannot be combined with power terms (different lower limits)",
            ));
        }
        return CausalFunction::exponential(exp_coef);
    }
    CausalFunction::new(terms, 0.0)
}

/// `a·f + b·g`. A function whose coefficient is exactly zero does not take
/// part, so its lower limit is not compared.
pub fn linear_combine(
    a: Complex64,
    f: &CausalFunction,
    b: Complex64,
    g: &CausalFunction,
) -> Result<CausalFunction> {
    let zero = Complex64::new(0.0, 0.0);
    let parts: Vec<(Complex64, &CausalFunction)> = [(a, f), (b, g)]
        .into_iter()
        .filter(|(c, _)| *c != zero)
        .collect();
    let lower_limit = match parts.as_slice() {
        [] => f.lower_limit,
        [(_, h)] => h.lower_limit,
        [(_, f), (_, g), ..] => {
            if f.lower_limit != g.lower_limit {
                return Err(Error::Mismatch(
                    f.lower_limit.to_string(),
                    g.lower_limit.to_string(),
                ));
            }
            f.lower_limit
        }
    };
    let terms = parts
        .iter()
        .flat_map(|(c, h)| {
            h.terms
                .iter()
                .map(move |t| PowerTerm::new(c * t.coef, t.exponent))
        })
        .collect::<Vec<_>>();
    let exp_coef = parts.iter().map(|(c, h)| c * h.exp_coef).sum();
    Ok(CausalFunction::from_parts(terms, exp_coef, lower_limit))
}
