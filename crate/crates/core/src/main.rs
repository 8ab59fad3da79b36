use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(mwbound::cli::run() as u8)
}
