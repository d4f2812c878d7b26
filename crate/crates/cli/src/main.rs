fn main() {
    std::process::exit(phasegate_cli::run());
}
