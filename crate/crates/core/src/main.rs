fn main() {
    std::process::exit(angleforge::cli::run(std::env::args_os()));
}
