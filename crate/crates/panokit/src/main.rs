fn main() {
    std::process::exit(panokit::cli::run(std::env::args_os()));
}
