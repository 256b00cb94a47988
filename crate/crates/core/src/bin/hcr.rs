fn main() {
    std::process::exit(heisenberg_cr::cli::run_from(std::env::args_os()));
}
