fn main() {
    std::process::exit(backscatter_sim::cli::run(std::env::args_os()));
}
