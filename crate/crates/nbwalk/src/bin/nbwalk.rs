fn main() {
    let args: Vec<String> = std::env::args().collect();
    let mut stdout = std::io::stdout().lock();
    let code = nbwalk::cli::run(&args, &mut stdout);
    std::process::exit(code);
}
