fn main() {
    let code = gamma0::cli::run_from_env();
    std::process::exit(code);
}
