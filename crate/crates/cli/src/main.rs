fn main() {
    std::process::exit(gwl_cli::main_with_args(std::env::args_os()));
}
