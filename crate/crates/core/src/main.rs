fn main() {
    std::process::exit(nilmoduli::cli::run(std::env::args_os()));
}
