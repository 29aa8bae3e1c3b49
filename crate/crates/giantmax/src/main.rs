fn main() {
    std::process::exit(giantmax::cli::main());
}
