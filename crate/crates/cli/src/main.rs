fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(orthopack_cli::run(args));
}
