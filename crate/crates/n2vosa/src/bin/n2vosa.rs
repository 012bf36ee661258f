fn main() {
    std::process::exit(n2vosa::cli::main_with_args(std::env::args_os()));
}
