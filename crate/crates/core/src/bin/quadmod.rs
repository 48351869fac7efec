fn main() {
    std::process::exit(quadmod::cli::main_with_args(std::env::args_os()));
}
