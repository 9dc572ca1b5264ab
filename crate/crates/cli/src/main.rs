fn main() {
    std::process::exit(fairvoc_cli::run(std::env::args_os()));
}
