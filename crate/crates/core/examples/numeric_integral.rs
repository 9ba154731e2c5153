//! Quadrature for J^s on an arbitrary callable, checked against the closed
//! form on a complex power.

use fracops::{
    complex_pow, format_complex, integrate_numeric, integrate_power, Complex64, ComplexOrder,
    QuadConfig,
};

fn main() -> fracops::Result<()> {
    let cfg = QuadConfig::default();
    let s = ComplexOrder::from_parts(0.5, 0.25);

    let p = Complex64::new(1.0, 1.0);
    let f = |y: f64| complex_pow(y.max(0.0), p).unwrap_or_default();
    let (coef, e) = integrate_power(p, s)?;
    for x in [0.5, 1.5, 3.0] {
        let num = integrate_numeric(&f, s, x, 0.0, &cfg)?;
        let exact = coef * complex_pow(x, e)?;
        println!(
            "x = {x}: numeric {}  exact {}  |diff| {:.1e}",
            format_complex(num),
            format_complex(exact),
            (num - exact).norm()
        );
    }

    // no closed form here: J^s cos on [1, x]
    let g = |y: f64| Complex64::new(y.cos(), 0.0);
    for x in [2.0, 4.0] {
        println!(
            "J^({s}) cos ({x}) from 1 = {}",
            format_complex(integrate_numeric(&g, s, x, 1.0, &cfg)?)
        );
    }
    Ok(())
}
