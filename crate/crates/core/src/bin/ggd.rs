fn main() {
    let (code, out) = groupoids::cli::run(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}
