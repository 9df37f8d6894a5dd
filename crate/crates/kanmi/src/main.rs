use std::process::ExitCode;

fn main() -> ExitCode {
    match kanmi::cli::main() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
