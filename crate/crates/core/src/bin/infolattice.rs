fn main() {
    std::process::exit(infolattice::cli::run(std::env::args_os()));
}
