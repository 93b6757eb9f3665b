fn main() {
    std::process::exit(invar::cli::run(std::env::args_os()));
}
