fn main() {
    std::process::exit(lcrit::cli::run(std::env::args_os()));
}
