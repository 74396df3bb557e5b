use std::process::ExitCode;

fn main() -> ExitCode {
    empathic_runner::cli::main_with_args(std::env::args_os())
}
