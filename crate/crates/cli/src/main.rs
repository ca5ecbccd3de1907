fn main() {
    std::process::exit(regsym_cli::run(std::env::args().collect()));
}
