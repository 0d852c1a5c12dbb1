fn main() {
    std::process::exit(slopegeo::cli::main_with_args(std::env::args_os()));
}
