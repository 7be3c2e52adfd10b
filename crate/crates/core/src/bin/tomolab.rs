fn main() {
    std::process::exit(tomolab::cli::run(std::env::args_os()));
}
