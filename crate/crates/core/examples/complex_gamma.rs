//! Gamma, log-Gamma, Beta and Gamma ratios at complex arguments.

use fracops::{beta, format_complex, gamma, gamma_ratio, log_gamma, Complex64};

fn main() -> fracops::Result<()> {
    for z in [
        Complex64::new(1.0, 1.0),
        Complex64::new(0.5, 0.0),
        Complex64::new(-0.5, 2.0),
    ] {
        println!("Γ{} = {}", format_complex(z), format_complex(gamma(z)?));
        println!(
            "lnΓ{} = {}",
            format_complex(z),
            format_complex(log_gamma(z)?)
        );
    }

    // 1/Γ vanishes at the poles, so the ratio is exactly zero there
    let at_pole = gamma_ratio(Complex64::new(2.0, 0.0), Complex64::new(-1.0, 0.0))?;
    println!("Γ(2)/Γ(-1) = {}", format_complex(at_pole));

    let b = beta(Complex64::new(0.5, 0.5), Complex64::new(2.0, 0.0))?;
    println!("B(0.5+0.5i, 2) = {}", format_complex(b));
    Ok(())
}
