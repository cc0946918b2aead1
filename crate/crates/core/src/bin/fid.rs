fn main() {
    std::process::exit(fid::cli::run(std::env::args_os()));
}
