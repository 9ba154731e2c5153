//! D^s = D^k J^{k-s}: the numeric derivative does not depend on k.

use fracops::{
    choose_k, complex_pow, differentiate_numeric, differentiate_power, format_complex, Complex64,
    ComplexOrder, QuadConfig,
};

fn main() -> fracops::Result<()> {
    let cfg = QuadConfig::default();
    let p = Complex64::new(1.0, 1.0);
    let f = |y: f64| complex_pow(y.max(0.0), p).unwrap_or_default();
    let x = 2.0;

    for s in [
        ComplexOrder::real(0.5),
        ComplexOrder::from_parts(0.75, 0.5),
        ComplexOrder::from_parts(1.6, -0.3),
    ] {
        let (coef, e) = differentiate_power(p, s)?;
        println!(
            "D^({s}) x^(1+1i) at x = {x}, exact {}",
            format_complex(coef * complex_pow(x, e)?)
        );
        let k = choose_k(s);
        for k in k..k + 3 {
            let v = differentiate_numeric(&f, s, x, 0.0, k, &cfg)?;
            println!("  k = {k}: {}", format_complex(v));
        }
    }
    Ok(())
}
