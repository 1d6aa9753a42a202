fn main() {
    std::process::exit(awproof::cli::run(std::env::args_os()));
}
