use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(gaugeform_cli::run(std::env::args_os()))
}
