fn main() {
    std::process::exit(qlms_sparse::cli::main_with(std::env::args_os()));
}
