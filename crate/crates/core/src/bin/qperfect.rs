fn main() {
    std::process::exit(qperfect::cli::run(std::env::args_os()));
}
