fn main() {
    std::process::exit(ucdtqw::cli::main());
}
