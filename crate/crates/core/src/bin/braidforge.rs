use std::io::Write;
use std::process::ExitCode;

use braidforge::cli::{self, ExitStatus, LOG_ENV};

fn main() -> ExitCode {
    let level = std::env::var(LOG_ENV).ok();
    let Some(filter) = cli::log_filter(level.as_deref()) else {
        eprintln!("error: {LOG_ENV} must be one of quiet, info, debug");
        return ExitCode::from(ExitStatus::Usage.code() as u8);
    };
    env_logger::Builder::new().filter_level(filter).init();
    let out = cli::run(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    ExitCode::from(out.code() as u8)
}
