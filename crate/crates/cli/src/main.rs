fn main() {
    std::process::exit(occulab_cli::run(std::env::args_os()));
}
