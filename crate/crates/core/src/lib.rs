//! Complex-order fractional integrals `J^s` and derivatives `D^s`.
//!
//! For a function vanishing below a lower limit `x₀`,
//!
//! ```text
//! J^s f(x) = 1/Γ(s) ∫_{x₀}^{x} (x-y)^{s-1} f(y) dy,      Re(s) > 0
//! D^s f(x) = D^k J^{k-s} f(x),                          k > Re(s)
//! J^s      = D^{-s}                                     otherwise
//! ```
//!
//! The crate evaluates these two ways:
//!
//! * [`closed_form`]: exact Gamma-ratio formulas on sums of complex powers
//!   `c·(x-x₀)^p` (and `eˣ` on `x₀ = -∞` for integer orders);
//! * [`quadrature`]: singular-kernel quadrature for arbitrary callables,
//!   with `D^s` built from finite differences of `J^{k-s}`.
//!
//! [`operator`] collapses chains such as `D^(0.5).J^(1+1i)` to a net order
//! and routes evaluation to either backend, or both for comparison.
//!
//! ```
//! use fracops::{apply, parse_function, LowerLimit, Method, Operand, OperatorExpr, QuadConfig};
//!
//! let f = parse_function("x").unwrap();
//! let op = OperatorExpr::parse("J^(0.5)", LowerLimit::Finite(0.0)).unwrap();
//! let rows = apply(&op, &Operand::Causal(f), &[1.0], Method::Both, &QuadConfig::default());
//! assert!(rows[0].rel_err.unwrap() < 1e-8);
//! ```

pub mod cli;
pub mod closed_form;
pub mod error;
pub mod function;
mod lexer;
pub mod operator;
pub mod quadrature;
pub mod selftest;
pub mod special;

pub use closed_form::{apply_closed, differentiate_power, integrate_power};
pub use error::{Error, Result};
pub use function::{
    linear_combine, parse_function, CausalFunction, LowerLimit, OpaqueFunction, PowerTerm,
};
pub use lexer::{format_complex, format_f64};
pub use num_complex::Complex64;
pub use operator::{
    apply, choose_k, normalize, Branch, EvalResult, Method, NetOperator, Operand, OperatorExpr,
    OperatorStage, StageKind, Status,
};
pub use quadrature::{
    build_moments, differentiate_numeric, integrate_exp_lower_inf, integrate_numeric, MomentTable,
    QuadConfig,
};
pub use special::{beta, complex_pow, gamma, gamma_ratio, log_gamma, ComplexOrder, ComplexScalar};
