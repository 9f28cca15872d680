fn main() {
    std::process::exit(rumor_contain::cli::run(std::env::args_os()));
}
