fn main() {
    std::process::exit(stirling_lab::cli::run(std::env::args_os()));
}
