fn main() {
    std::process::exit(bergman::cli::run());
}
