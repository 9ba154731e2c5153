//! Runs the seeded self-checks from library code.

fn main() {
    let filter = std::env::args().nth(1);
    let reports = fracops::selftest::run(filter.as_deref(), 42);
    print!("{}", fracops::selftest::render_table(&reports));
}
