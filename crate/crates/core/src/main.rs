fn main() {
    std::process::exit(signed_covers::cli::main_with_args(std::env::args_os()));
}
