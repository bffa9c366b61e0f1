fn main() {
    std::process::exit(chromabound::cli::run());
}
