fn main() {
    std::process::exit(lucoset_cli::run(std::env::args_os()));
}
