fn main() {
    std::process::exit(qplane::cli::main_with_args(std::env::args_os()));
}
