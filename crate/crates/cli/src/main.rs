fn main() {
    std::process::exit(kindred_cli::run(std::env::args_os()));
}
