//! Moments of the kernel (1-u)^{s-1}: recurrence against Beta values.

use fracops::{beta, build_moments, Complex64, ComplexOrder};

fn main() -> fracops::Result<()> {
    for s in [
        Complex64::new(0.5, 0.0),
        Complex64::new(1.0, 1.0),
        Complex64::new(0.25, 2.0),
    ] {
        let table = build_moments(ComplexOrder::new(s)?, 64)?;
        let worst = table
            .moments()
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let b = beta(s, Complex64::new(k as f64 + 1.0, 0.0)).unwrap();
                (m - b).norm() / b.norm()
            })
            .fold(0.0, f64::max);
        println!(
            "s = {s}: {} moments, worst relative difference {worst:.1e}",
            table.count()
        );
    }
    Ok(())
}
