use std::process::ExitCode;

fn main() -> ExitCode {
    boxhelly::cli::run(std::env::args_os())
}
