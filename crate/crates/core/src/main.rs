fn main() {
    std::process::exit(gridwalk::cli::main_with_std());
}
