fn main() {
    std::process::exit(fpc::cli::main());
}
