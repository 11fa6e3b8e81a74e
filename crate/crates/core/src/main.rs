fn main() {
    std::process::exit(frobmult::cli::run(std::env::args_os()));
}
