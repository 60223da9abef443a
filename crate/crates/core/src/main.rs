fn main() {
    std::process::exit(mqstab::cli::run(std::env::args_os()));
}
