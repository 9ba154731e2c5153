//! J^s over (-∞, x] applied to eˣ, with the lower limit truncated at
//! x - (40 + 10|Im s|).

use fracops::{format_complex, integrate_exp_lower_inf, ComplexOrder, QuadConfig};

fn main() -> fracops::Result<()> {
    let cfg = QuadConfig::default();
    for s in [
        ComplexOrder::real(1.0),
        ComplexOrder::real(2.0),
        ComplexOrder::real(0.5),
        ComplexOrder::from_parts(0.5, 1.0),
    ] {
        for x in [0.0, 1.0] {
            let v = integrate_exp_lower_inf(s, x, &cfg)?;
            println!(
                "J^({s}) e^x at {x}: {}  (e^x = {})",
                format_complex(v),
                f64::exp(x)
            );
        }
    }
    Ok(())
}
