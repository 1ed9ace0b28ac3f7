use std::io::Write;
use std::process::ExitCode;

use genperm_cli::{run, CliError, Status};

fn main() -> ExitCode {
    match run(std::env::args_os()) {
        Ok(result) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(result.payload.render().as_bytes()).is_err() {
                return ExitCode::from(1);
            }
            let status = match result.status {
                Status::Ok => "ok",
                Status::Error => "error",
            };
            eprintln!("status: {status}, {} ms", result.timing_ms);
            ExitCode::from(result.exit_code() as u8)
        }
        Err(CliError::Usage(e)) => e.exit(),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
