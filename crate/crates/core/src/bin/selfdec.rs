fn main() {
    std::process::exit(selfdec::cli::main_with_env());
}
