fn main() {
    std::process::exit(virapath::cli::main_entry());
}
