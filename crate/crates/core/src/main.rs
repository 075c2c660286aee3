fn main() {
    std::process::exit(oujordan::cli::run(std::env::args_os()));
}
