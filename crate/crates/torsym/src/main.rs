use std::process::ExitCode;

fn main() -> ExitCode {
    torsym::cli::run()
}
