use std::process::ExitCode;

fn main() -> ExitCode {
    multisection::cli::main()
}
