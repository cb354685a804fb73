fn main() {
    std::process::exit(rmtlab::cli::run(std::env::args_os()));
}
