use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    match mfsgeo::cli::run(std::env::args_os()) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {}", mfsgeo::cli::diagnostic(&err));
            ExitCode::from(1)
        }
    }
}
