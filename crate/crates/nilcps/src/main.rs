use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let (code, text) = nilcps::cli::run(std::env::args_os());
    if !text.is_empty() {
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(text.as_bytes());
    }
    ExitCode::from(code as u8)
}
