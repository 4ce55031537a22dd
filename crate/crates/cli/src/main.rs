fn main() {
    std::process::exit(predprey_cli::run(std::env::args_os()).code());
}
