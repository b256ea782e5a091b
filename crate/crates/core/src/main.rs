fn main() {
    std::process::exit(endomotive::cli::run(std::env::args()));
}
