fn main() {
    std::process::exit(inertia_strata::cli::run(std::env::args_os()));
}
