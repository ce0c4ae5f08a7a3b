use std::process::ExitCode;

fn main() -> ExitCode {
    octoslice::cli::main_with_args(std::env::args_os())
}
