fn main() {
    std::process::exit(arith_equiv::cli::main_with(std::env::args_os()));
}
