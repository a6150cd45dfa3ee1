fn main() {
    std::process::exit(tgrs_cli::run(std::env::args_os()));
}
