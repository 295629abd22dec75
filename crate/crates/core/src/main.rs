use std::process::ExitCode;

fn main() -> ExitCode {
    catvase::cli::main_with(std::env::args_os())
}
