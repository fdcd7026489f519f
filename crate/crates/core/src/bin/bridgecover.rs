fn main() {
    std::process::exit(bridgecover::cli::main_with_args(std::env::args_os()));
}
