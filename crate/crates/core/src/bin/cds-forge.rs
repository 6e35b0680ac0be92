fn main() {
    std::process::exit(cds_forge::cli::run(std::env::args_os()));
}
