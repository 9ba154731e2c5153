fn main() {
    std::process::exit(fracops::cli::run(std::env::args().collect()));
}
