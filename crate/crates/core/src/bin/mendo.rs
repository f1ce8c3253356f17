fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let code = mendo::cli::dispatch(&argv, &mut std::io::stdin(), &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
