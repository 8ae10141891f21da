fn main() {
    std::process::exit(combcert::cli::run(std::env::args_os()));
}
