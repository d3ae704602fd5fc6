fn main() {
    std::process::exit(pipepuzzle_cli::run(std::env::args_os()));
}
