fn main() {
    std::process::exit(beamsplit::cli::run());
}
