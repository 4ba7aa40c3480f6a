fn main() {
    std::process::exit(heightlab::cli::main_with(std::env::args()));
}
