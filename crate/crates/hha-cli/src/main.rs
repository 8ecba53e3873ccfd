use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let field = std::env::var(hha_cli::DEFAULT_FIELD_VAR).ok();
    let out = hha_cli::run_args(std::env::args_os(), field.as_deref());
    // A closed pipe is not an error worth reporting.
    let _ = std::io::stdout().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    ExitCode::from(out.status as u8)
}
