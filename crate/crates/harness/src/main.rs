fn main() {
    std::process::exit(u21_harness::cli::main_with(std::env::args_os()));
}
