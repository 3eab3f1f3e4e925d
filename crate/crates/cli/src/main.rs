use std::process::ExitCode;

use spexlab_cli::{execute, parse_and_plan, CliError, EXIT_OK};

/// Sizes the global worker pool from `SPEX_THREADS` when it is set.
fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("SPEX_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::usage(format!("SPEX_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::io(e.to_string()))
}

fn main() -> ExitCode {
    let status = configure_threads()
        .and_then(|()| parse_and_plan(std::env::args_os()))
        .map(|plan| execute(&plan));
    let code = match status {
        Ok(code) => code,
        Err(e) if e.code == EXIT_OK => {
            print!("{}", e.message);
            EXIT_OK
        }
        Err(e) => {
            let prefix = if e.message.starts_with("error:") { "" } else { "error: " };
            eprintln!("{prefix}{}", e.message.trim_end());
            e.code
        }
    };
    ExitCode::from(code as u8)
}
