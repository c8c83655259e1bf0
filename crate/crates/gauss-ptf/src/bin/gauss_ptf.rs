fn main() {
    std::process::exit(gauss_ptf::cli::run());
}
