fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(blackbox_groups::cli::main_with_args(args));
}
