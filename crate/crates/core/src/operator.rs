//! Operator chains, their normalization to a single net order, and routing
//! of evaluations to the closed-form or numeric backends.
//!
//! A chain `D^(a).J^(b)` is applied right to left. Its net order is
//! `σ = Σ J-orders − Σ D-orders`; `J^σ` is an integral for `Re σ > 0`, the
//! derivative `D^{-σ} = D^k J^{k+σ}` otherwise, and the identity for `σ = 0`.

use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::closed_form::apply_closed;
use crate::error::{Error, Result};
use crate::function::{CausalFunction, LowerLimit, OpaqueFunction};
use crate::lexer::{format_complex, Cursor};
use crate::quadrature::{
    differentiate_exp_lower_inf, differentiate_numeric, integrate_exp_lower_inf, integrate_numeric,
    QuadConfig,
};
use crate::special::ComplexOrder;

/// Net orders closer than this to zero collapse to the identity.
pub const IDENTITY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StageKind {
    Integral,
    Derivative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorStage {
    kind: StageKind,
    order: ComplexOrder,
}

impl OperatorStage {
    /// `J^0` is allowed (identity); `D^0` is rejected.
    pub fn new(kind: StageKind, order: ComplexOrder) -> Result<Self> {
        if kind == StageKind::Derivative && order.is_zero() {
            return Err(Error::domain(
                "D^0 is not a valid stage; use J^0 for the identity",
            ));
        }
        Ok(Self { kind, order })
    }

    pub fn integral(order: ComplexOrder) -> Self {
        Self {
            kind: StageKind::Integral,
            order,
        }
    }

    pub fn derivative(order: ComplexOrder) -> Result<Self> {
        Self::new(StageKind::Derivative, order)
    }

    pub fn kind(&self) -> StageKind {
        self.kind
    }

    pub fn order(&self) -> ComplexOrder {
        self.order
    }

    fn signed_order(&self) -> Complex64 {
        match self.kind {
            StageKind::Integral => self.order.value(),
            StageKind::Derivative => -self.order.value(),
        }
    }
}

impl fmt::Display for OperatorStage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.kind {
            StageKind::Integral => 'J',
            StageKind::Derivative => 'D',
        };
        write!(f, "{letter}^{}", format_complex(self.order.value()))
    }
}

/// A chain of stages sharing one lower limit; `stages[0]` is applied last.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorExpr {
    stages: Vec<OperatorStage>,
    lower_limit: LowerLimit,
}

impl OperatorExpr {
    pub fn new(stages: Vec<OperatorStage>, lower_limit: LowerLimit) -> Self {
        Self {
            stages,
            lower_limit,
        }
    }

    pub fn stages(&self) -> &[OperatorStage] {
        &self.stages
    }

    pub fn lower_limit(&self) -> LowerLimit {
        self.lower_limit
    }

    pub fn with_lower_limit(mut self, lower_limit: LowerLimit) -> Self {
        self.lower_limit = lower_limit;
        self
    }

    /// `"D^(0.5).J^(1+1i)"`: stages separated by `.`, applied right to left.
    pub fn parse(text: &str, lower_limit: LowerLimit) -> Result<Self> {
        let mut cur = Cursor::new(text);
        let mut stages = Vec::new();
        loop {
            let kind = if cur.eat(b'J') {
                StageKind::Integral
            } else if cur.eat(b'D') {
                StageKind::Derivative
            } else {
                return Err(cur.error("'J' or 'D'"));
            };
            cur.expect(b'^', "'^'")?;
            let order = ComplexOrder::new(cur.complex()?)?;
            stages.push(OperatorStage::new(kind, order)?);
            if cur.at_end() {
                break;
            }
            cur.expect(b'.', "'.' or end of chain")?;
        }
        Ok(Self {
            stages,
            lower_limit,
        })
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.stages.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Integrate,
    Differentiate,
    Identity,
}

/// The single operator a chain collapses to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NetOperator {
    /// Σ J-orders − Σ D-orders.
    pub sigma: Complex64,
    pub branch: Branch,
    /// Integer order of the outer ordinary derivative (0 unless
    /// differentiating); `Re(k + σ) > 0`.
    pub k: u32,
}

/// `k = ⌊Re(s)⌋ + 1` for a derivative of order `s` (at least 1).
pub fn choose_k(s: ComplexOrder) -> u32 {
    (s.alpha().floor() + 1.0).max(1.0) as u32
}

/// `k = ⌊Re(-s)⌋ + 1` for an integral order `s` with `Re(s) <= 0`, so that
/// `J^s = D^k J^{k+s}` has `Re(k + s) > 0`.
pub fn choose_k_for_integral(s: ComplexOrder) -> u32 {
    choose_k(-s)
}

pub fn normalize(expr: &OperatorExpr) -> NetOperator {
    let mut sigma: Complex64 = expr.stages.iter().map(OperatorStage::signed_order).sum();
    if sigma.norm() <= IDENTITY_TOLERANCE {
        sigma = Complex64::new(0.0, 0.0);
    }
    let (branch, k) = if sigma == Complex64::new(0.0, 0.0) {
        (Branch::Identity, 0)
    } else if sigma.re > 0.0 {
        (Branch::Integrate, 0)
    } else {
        let order = ComplexOrder::new(sigma).expect("finite sum of finite orders");
        (Branch::Differentiate, choose_k_for_integral(order))
    };
    NetOperator { sigma, branch, k }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Closed,
    Numeric,
    Both,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "closed" => Ok(Method::Closed),
            "numeric" => Ok(Method::Numeric),
            "both" => Ok(Method::Both),
            _ => Err(Error::Parse {
                offset: 0,
                expected: "closed, numeric or both".into(),
            }),
        }
    }
}

/// Function argument for [`apply`].
#[derive(Debug, Clone)]
pub enum Operand {
    Causal(CausalFunction),
    Opaque(OpaqueFunction),
}

impl Operand {
    fn lower_limit(&self) -> LowerLimit {
        match self {
            Operand::Causal(f) => f.lower_limit(),
            Operand::Opaque(g) => LowerLimit::Finite(g.lower_limit()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    ConvergenceError,
    DomainError,
    Unsupported,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Ok => "Ok",
            Status::ConvergenceError => "ConvergenceError",
            Status::DomainError => "DomainError",
            Status::Unsupported => "Unsupported",
        })
    }
}

/// Relative errors divide by at least this.
pub const REL_ERR_FLOOR: f64 = 1e-300;

/// One grid point. `value` is absent only when no estimate exists (domain
/// or unsupported failures); on non-convergence it holds the best estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalResult {
    pub x: f64,
    pub value: Option<Complex64>,
    pub reference: Option<Complex64>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub status: Status,
    pub message: Option<String>,
}

impl EvalResult {
    fn from_outcome(x: f64, outcome: Result<Complex64>) -> Self {
        let (value, status, message) = match outcome {
            Ok(v) => (Some(v), Status::Ok, None),
            Err(e) => {
                let message = Some(e.to_string());
                match e {
                    Error::Convergence { estimate, .. } => {
                        (Some(estimate), Status::ConvergenceError, message)
                    }
                    Error::Unsupported(_) => (None, Status::Unsupported, message),
                    _ => (None, Status::DomainError, message),
                }
            }
        };
        Self {
            x,
            value,
            reference: None,
            abs_err: None,
            rel_err: None,
            status,
            message,
        }
    }

    fn with_reference(mut self, reference: Complex64) -> Self {
        self.reference = Some(reference);
        if let Some(v) = self.value {
            let abs = (v - reference).norm();
            self.abs_err = Some(abs);
            self.rel_err = Some(abs / reference.norm().max(REL_ERR_FLOOR));
        }
        self
    }
}

fn numeric_point(net: &NetOperator, f: &Operand, x: f64, cfg: &QuadConfig) -> Result<Complex64> {
    let sample: Box<dyn Fn(f64) -> Complex64 + Sync + '_> = match f {
        Operand::Causal(c) => Box::new(move |y| c.sample(y)),
        Operand::Opaque(g) => Box::new(move |y| g.evaluate(y)),
    };
    let x0 = f.lower_limit();
    match (net.branch, x0) {
        (Branch::Identity, _) => match f {
            Operand::Causal(c) => c.evaluate(x),
            Operand::Opaque(g) => Ok(g.evaluate(x)),
        },
        (Branch::Integrate, LowerLimit::Finite(x0)) => {
            integrate_numeric(&*sample, ComplexOrder::new(net.sigma)?, x, x0, cfg)
        }
        (Branch::Differentiate, LowerLimit::Finite(x0)) => {
            differentiate_numeric(&*sample, ComplexOrder::new(-net.sigma)?, x, x0, net.k, cfg)
        }
        (branch, LowerLimit::NegInfinity) => {
            let coef = match f {
                Operand::Causal(c) => c.exp_coef(),
                Operand::Opaque(_) => unreachable!("opaque functions have finite limits"),
            };
            let unit = if branch == Branch::Integrate {
                integrate_exp_lower_inf(ComplexOrder::new(net.sigma)?, x, cfg)?
            } else {
                differentiate_exp_lower_inf(ComplexOrder::new(-net.sigma)?, x, net.k, cfg)?
            };
            Ok(coef * unit)
        }
    }
}

/// Evaluates `expr` applied to `f` at every point of `xs`.
///
/// Failures are recorded per point; one bad point never aborts the others.
/// Results are returned in the order of `xs`.
pub fn apply(
    expr: &OperatorExpr,
    f: &Operand,
    xs: &[f64],
    method: Method,
    cfg: &QuadConfig,
) -> Vec<EvalResult> {
    let net = normalize(expr);
    let setup_error = if expr.lower_limit() != f.lower_limit() {
        Some(Error::Mismatch(
            expr.lower_limit().to_string(),
            f.lower_limit().to_string(),
        ))
    } else {
        cfg.validate().err()
    };
    let closed: Option<Result<CausalFunction>> = match (method, f) {
        (Method::Numeric, _) => None,
        (_, Operand::Causal(c)) => Some(apply_closed(expr, c)),
        (_, Operand::Opaque(_)) => Some(Err(Error::Unsupported(
            "closed form needs a power-sum function".into(),
        ))),
    };
    let x0 = f.lower_limit().finite();

    xs.par_iter()
        .map(|&x| {
            if let Some(e) = &setup_error {
                return EvalResult::from_outcome(x, Err(e.clone()));
            }
            if !x.is_finite() || x0.is_some_and(|x0| x <= x0) {
                return EvalResult::from_outcome(
                    x,
                    Err(Error::domain(format!(
                        "x = {x} is not above the lower limit"
                    ))),
                );
            }
            let closed_value = closed.as_ref().map(|r| match r {
                Ok(g) => g.evaluate(x),
                Err(e) => Err(e.clone()),
            });
            match method {
                Method::Closed => {
                    EvalResult::from_outcome(x, closed_value.expect("closed requested"))
                }
                Method::Numeric => EvalResult::from_outcome(x, numeric_point(&net, f, x, cfg)),
                Method::Both => {
                    let result = EvalResult::from_outcome(x, numeric_point(&net, f, x, cfg));
                    match closed_value.expect("closed requested") {
                        Ok(reference) => result.with_reference(reference),
                        Err(e) => {
                            let mut r = result;
                            let note = format!("no closed form: {e}");
                            r.message = Some(match r.message {
                                Some(m) => format!("{m}; {note}"),
                                None => note,
                            });
                            r
                        }
                    }
                }
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::function::parse_function;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn chain(text: &str) -> OperatorExpr {
        OperatorExpr::parse(text, LowerLimit::Finite(0.0)).unwrap()
    }

    #[test]
    fn parse_chains() {
        let e = chain("D^(0.5).J^(1+1i)");
        assert_eq!(e.stages().len(), 2);
        assert_eq!(e.stages()[0].kind(), StageKind::Derivative);
        assert_eq!(e.stages()[1].order().value(), c(1.0, 1.0));
        assert_eq!(e.to_string(), "D^(0.5+0i).J^(1+1i)");
        assert_eq!(chain("J^1.J^0.5").stages().len(), 2);
        assert!(matches!(
            OperatorExpr::parse("J^(1).K^(2)", LowerLimit::Finite(0.0)),
            Err(Error::Parse { offset: 6, .. })
        ));
        assert!(OperatorExpr::parse("D^(0)", LowerLimit::Finite(0.0)).is_err());
        assert!(OperatorExpr::parse("J^(0)", LowerLimit::Finite(0.0)).is_ok());
    }

    #[test]
    fn normalize_examples() {
        let n = normalize(&chain("J^(0.5).J^(0.5)"));
        assert_eq!(
            (n.sigma, n.branch, n.k),
            (c(1.0, 0.0), Branch::Integrate, 0)
        );
        let n = normalize(&chain("D^(0.3+0.7i).J^(0.3+0.7i)"));
        assert_eq!((n.sigma, n.branch), (c(0.0, 0.0), Branch::Identity));
        let n = normalize(&chain("D^(0.3+0.2i).J^(0.5)"));
        assert!((n.sigma - c(0.2, -0.2)).norm() < 1e-15);
        assert_eq!(n.branch, Branch::Integrate);
        let n = normalize(&chain("D^(2.5)"));
        assert_eq!((n.branch, n.k), (Branch::Differentiate, 3));
        let n = normalize(&chain("D^(0+1i)"));
        assert_eq!((n.branch, n.k), (Branch::Differentiate, 1));
    }

    #[test]
    fn choose_k_examples() {
        assert_eq!(choose_k(ComplexOrder::from_parts(0.5, 0.25)), 1);
        assert_eq!(choose_k(ComplexOrder::real(2.0)), 3);
        assert_eq!(choose_k(ComplexOrder::from_parts(0.0, 1.0)), 1);
        assert_eq!(choose_k_for_integral(ComplexOrder::real(-1.5)), 2);
    }

    #[test]
    fn apply_closed_integral() {
        let f = Operand::Causal(parse_function("x").unwrap());
        let r = apply(
            &chain("J^(1)"),
            &f,
            &[2.0],
            Method::Closed,
            &QuadConfig::default(),
        );
        assert_eq!(r[0].status, Status::Ok);
        assert!((r[0].value.unwrap() - c(2.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn apply_identity_is_exact() {
        let f = parse_function("x^(1+1i) + 3*x^0.5").unwrap();
        let xs = [0.5, 1.5];
        let op = Operand::Causal(f.clone());
        let r = apply(
            &chain("D^(0.5+0.25i).J^(0.5+0.25i)"),
            &op,
            &xs,
            Method::Closed,
            &QuadConfig::default(),
        );
        for (res, x) in r.iter().zip(xs) {
            assert_eq!(res.value.unwrap(), f.evaluate(x).unwrap());
        }
    }

    #[test]
    fn apply_isolates_bad_points() {
        let f = Operand::Causal(parse_function("x").unwrap());
        let r = apply(
            &chain("J^(0.5)"),
            &f,
            &[-1.0, 1.0, 0.0],
            Method::Both,
            &QuadConfig::default(),
        );
        assert_eq!(
            r.iter().map(|r| r.status).collect::<Vec<_>>(),
            vec![Status::DomainError, Status::Ok, Status::DomainError]
        );
        assert!(r[1].rel_err.unwrap() <= 1e-8);
        assert_eq!(r[1].x, 1.0);
    }

    #[test]
    fn apply_opaque_numeric() {
        let g = Operand::Opaque(OpaqueFunction::new(0.0, |y| c(y, 0.0)));
        let r = apply(
            &chain("J^(0.5)"),
            &g,
            &[1.0],
            Method::Numeric,
            &QuadConfig::default(),
        );
        assert!((r[0].value.unwrap() - c(0.7522527780636751, 0.0)).norm() < 1e-12);
        let r = apply(
            &chain("J^(0.5)"),
            &g,
            &[1.0],
            Method::Closed,
            &QuadConfig::default(),
        );
        assert_eq!(r[0].status, Status::Unsupported);
    }

    #[test]
    fn apply_exp_noninteger_has_numeric_only() {
        let e = Operand::Causal(parse_function("exp(x)").unwrap());
        let expr = chain("J^(0.5)").with_lower_limit(LowerLimit::NegInfinity);
        let r = apply(&expr, &e, &[0.0], Method::Both, &QuadConfig::default());
        assert_eq!(r[0].status, Status::Ok);
        assert!(r[0].reference.is_none());
        assert!(r[0].message.as_deref().unwrap().contains("no closed form"));
        let r = apply(&expr, &e, &[0.0], Method::Closed, &QuadConfig::default());
        assert_eq!(r[0].status, Status::Unsupported);
    }

    #[test]
    fn apply_lower_limit_mismatch() {
        let f = Operand::Causal(parse_function("x").unwrap());
        let expr = chain("J^(1)").with_lower_limit(LowerLimit::Finite(1.0));
        let r = apply(&expr, &f, &[2.0], Method::Numeric, &QuadConfig::default());
        assert_eq!(r[0].status, Status::DomainError);
    }
}
