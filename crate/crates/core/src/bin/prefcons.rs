fn main() {
    let code = prefcons::cli::run(std::env::args_os(), &mut std::io::stdout().lock());
    std::process::exit(code);
}
