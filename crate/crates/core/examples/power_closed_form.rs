//! Exact fractional integrals and derivatives of a power sum.

use fracops::{apply_closed, parse_function, LowerLimit, OperatorExpr};

fn main() -> fracops::Result<()> {
    let f = parse_function("x^(1+1i) - 2*x^0.5 + 3")?;
    println!("f        = {f}");

    for chain in ["J^(0.5)", "D^(0.5)", "J^(1+1i)", "D^(0.5).J^(0.5)", "D^(2)"] {
        let op = OperatorExpr::parse(chain, LowerLimit::Finite(0.0))?;
        println!("{chain:<16} f = {}", apply_closed(&op, &f)?);
    }
    Ok(())
}
