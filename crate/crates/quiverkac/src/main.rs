fn main() {
    std::process::exit(quiverkac::cli::main_entry());
}
