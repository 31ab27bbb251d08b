use std::process::ExitCode;

fn main() -> ExitCode {
    etk_cli::run()
}
