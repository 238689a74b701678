fn main() {
    std::process::exit(weightdist_cli::run(std::env::args_os()));
}
