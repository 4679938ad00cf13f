fn main() {
    std::process::exit(torsion_bounds::cli::main_with_args(std::env::args_os()));
}
