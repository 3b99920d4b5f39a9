fn main() {
    std::process::exit(virtual_en::cli::main());
}
