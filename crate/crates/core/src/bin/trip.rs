fn main() {
    std::process::exit(trip::cli::run(std::env::args_os()));
}
