//! Exact J^s and D^s on power sums via Gamma ratios.
//!
//! `J^s (x-x₀)^p = Γ(p+1)/Γ(s+p+1) · (x-x₀)^{p+s}` and
//! `D^s (x-x₀)^p = Γ(p+1)/Γ(p-s+1) · (x-x₀)^{p-s}`. Operator chains are
//! collapsed to their net order before anything is applied.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::{CausalFunction, LowerLimit, PowerTerm};
use crate::operator::{normalize, Branch, OperatorExpr};
use crate::special::{gamma_ratio, ComplexOrder};

const INTEGER_ORDER_TOLERANCE: f64 = 1e-12;

fn check_exponent(p: Complex64) -> Result<()> {
    if p.re > -1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "exponent {p} must have real part > -1"
        )))
    }
}

/// `J^s x^p = coef · x^{new_exponent}`; requires `Re(p) > -1`, `Re(s) > 0`.
pub fn integrate_power(p: Complex64, s: ComplexOrder) -> Result<(Complex64, Complex64)> {
    check_exponent(p)?;
    if s.alpha() <= 0.0 {
        return Err(Error::domain(format!(
            "integral order {s} must have positive real part"
        )));
    }
    let coef = gamma_ratio(p + 1.0, s.value() + p + 1.0)?;
    Ok((coef, p + s.value()))
}

/// `D^s x^p = coef · x^{new_exponent}`; requires `Re(p) > -1`, `Re(s) >= 0`.
///
/// The coefficient is exactly zero when `p - s + 1` is a pole of Γ, e.g.
/// `D² x = 0`. `Re(s) = 0` is accepted: the coefficient does not depend on
/// the integer used to build the derivative.
pub fn differentiate_power(p: Complex64, s: ComplexOrder) -> Result<(Complex64, Complex64)> {
    check_exponent(p)?;
    if s.alpha() < 0.0 {
        return Err(Error::domain(format!(
            "derivative order {s} must have Re >= 0"
        )));
    }
    let coef = gamma_ratio(p + 1.0, p - s.value() + 1.0)?;
    Ok((coef, p - s.value()))
}

fn is_integer(z: Complex64) -> bool {
    z.im.abs() <= INTEGER_ORDER_TOLERANCE && (z.re - z.re.round()).abs() <= INTEGER_ORDER_TOLERANCE
}

/// Applies the operator of net order `sigma` (J for `Re σ > 0`, D of order
/// `-σ` otherwise) term by term.
pub fn apply_net_order(sigma: Complex64, f: &CausalFunction) -> Result<CausalFunction> {
    if sigma == Complex64::new(0.0, 0.0) {
        return Ok(f.clone());
    }
    let order = ComplexOrder::new(sigma)?;
    let mut terms = Vec::with_capacity(f.terms().len());
    for t in f.terms() {
        let (c, e) = if sigma.re > 0.0 {
            integrate_power(t.exponent, order)?
        } else {
            differentiate_power(t.exponent, -order)?
        };
        terms.push(PowerTerm::new(t.coef * c, e));
    }
    let exp_coef = f.exp_coef();
    if f.lower_limit() == LowerLimit::NegInfinity
        && exp_coef != Complex64::new(0.0, 0.0)
        && !is_integer(sigma)
    {
        return Err(Error::Unsupported(format!(
            "closed form of J^({sigma}) on exp(x) is only known for integer orders"
        )));
    }
    Ok(CausalFunction::from_parts(terms, exp_coef, f.lower_limit()))
}

/// Closed-form application of an operator chain. The chain's lower limit
/// must match the function's.
pub fn apply_closed(op: &OperatorExpr, f: &CausalFunction) -> Result<CausalFunction> {
    if op.lower_limit() != f.lower_limit() {
        return Err(Error::Mismatch(
            op.lower_limit().to_string(),
            f.lower_limit().to_string(),
        ));
    }
    let net = normalize(op);
    match net.branch {
        Branch::Identity => Ok(f.clone()),
        Branch::Integrate | Branch::Differentiate => apply_net_order(net.sigma, f),
    }
}
