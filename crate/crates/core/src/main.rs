use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = peqa::cli::run(std::env::args_os());
    let _ = std::io::stdout().write_all(outcome.out.as_bytes());
    let _ = std::io::stderr().write_all(outcome.err.as_bytes());
    ExitCode::from(outcome.code as u8)
}
