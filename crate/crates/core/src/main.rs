fn main() {
    let code = susy_jacobi::cli::run(std::env::args_os().skip(1));
    std::process::exit(code);
}
