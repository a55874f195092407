fn main() {
    std::process::exit(loday_cli::main_with_args(std::env::args_os()));
}
