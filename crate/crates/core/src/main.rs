fn main() {
    std::process::exit(forgetting::harness::cli::run(std::env::args()));
}
