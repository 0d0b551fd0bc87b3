fn main() {
    std::process::exit(twoopt_lab::cli::run(std::env::args_os()));
}
