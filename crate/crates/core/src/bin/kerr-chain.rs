fn main() {
    std::process::exit(kerr_chain::cli::run(std::env::args_os()));
}
