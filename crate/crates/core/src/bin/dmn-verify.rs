fn main() {
    std::process::exit(dmn_verify::cli::run(std::env::args_os()));
}
