fn main() {
    std::process::exit(dyngreen::cli::run_cli());
}
