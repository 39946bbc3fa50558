fn main() {
    std::process::exit(ubmlab::cli::main_with_args(std::env::args_os()));
}
