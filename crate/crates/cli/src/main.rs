fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(orthoglide_cli::execute(&argv));
}
