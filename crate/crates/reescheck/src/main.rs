fn main() {
    std::process::exit(reescheck::cli::run());
}
