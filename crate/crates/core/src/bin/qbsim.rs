fn main() {
    std::process::exit(qbsim::cli::run(std::env::args_os()));
}
