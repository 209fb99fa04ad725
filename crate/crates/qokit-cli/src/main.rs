fn main() {
    std::process::exit(qokit_cli::run());
}
