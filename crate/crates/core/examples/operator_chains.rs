//! Chains collapse to one net order; `apply` evaluates them on a grid with
//! both backends and reports the disagreement.

use fracops::{
    apply, format_f64, normalize, parse_function, Method, Operand, OperatorExpr, QuadConfig,
};

fn main() -> fracops::Result<()> {
    let f = parse_function("x^2 + x")?;
    let xs: Vec<f64> = (1..=4).map(|i| 0.5 * i as f64).collect();

    for chain in [
        "J^(0.7).J^(0.6)",
        "D^(0.5+0.25i).J^(0.5+0.25i)",
        "D^(1).J^(1.5+0.5i)",
        "D^(0.3)",
    ] {
        let op = OperatorExpr::parse(chain, f.lower_limit())?;
        let net = normalize(&op);
        println!(
            "{chain}: net order {}, {:?}, k = {}",
            net.sigma, net.branch, net.k
        );
        for r in apply(
            &op,
            &Operand::Causal(f.clone()),
            &xs,
            Method::Both,
            &QuadConfig::default(),
        ) {
            let v = r.value.map(|v| v.to_string()).unwrap_or_default();
            let err = r.rel_err.map(format_f64).unwrap_or_default();
            println!("  x = {:<4} {v:<45} rel_err {err} {}", r.x, r.status);
        }
    }
    Ok(())
}
