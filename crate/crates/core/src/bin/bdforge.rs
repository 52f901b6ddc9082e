use std::io::Write;

fn main() {
    let (code, text) = bdforge::cli::run(std::env::args_os());
    let mut out: Box<dyn Write> = if code == bdforge::cli::EXIT_INVALID && !text.starts_with('{') {
        Box::new(std::io::stderr())
    } else {
        Box::new(std::io::stdout())
    };
    let _ = out.write_all(text.as_bytes());
    std::process::exit(code);
}
