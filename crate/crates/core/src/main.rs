fn main() {
    std::process::exit(trimax::cli::run(std::env::args_os()));
}
