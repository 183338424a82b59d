fn main() {
    std::process::exit(cli_harness::main_with(std::env::args_os()));
}
