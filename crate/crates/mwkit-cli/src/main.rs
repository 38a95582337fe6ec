use std::io::Write;

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let (code, text) = mwkit_cli::run(&argv);
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
    std::process::exit(code);
}
