fn main() {
    std::process::exit(nekrasov_cli::app::main_with(std::env::args_os()));
}
