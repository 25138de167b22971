fn main() {
    std::process::exit(pgl::cli::run(std::env::args_os()));
}
