fn main() {
    std::process::exit(c4cn::cli::run(std::env::args_os()));
}
