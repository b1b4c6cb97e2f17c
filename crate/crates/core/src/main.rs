fn main() {
    std::process::exit(quadalg::cli::run(std::env::args_os()));
}
