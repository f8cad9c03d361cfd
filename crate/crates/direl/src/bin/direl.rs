fn main() {
    std::process::exit(direl::cli::run());
}
