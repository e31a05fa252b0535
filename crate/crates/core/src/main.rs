fn main() {
    std::process::exit(qflag::cli::run(std::env::args_os()));
}
