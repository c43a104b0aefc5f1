fn main() {
    std::process::exit(dhseq::cli::run(std::env::args_os()));
}
