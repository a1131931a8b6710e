use std::process::ExitCode;

use clap::error::ErrorKind;
use skill_ecm::cli::{self, CliError};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let mut stdout = std::io::stdout().lock();
    match cli::run(std::env::args_os(), &mut stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Parse(e))
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) =>
        {
            let _ = e.print();
            ExitCode::SUCCESS
        }
        Err(e) => {
            // One line on stderr, whatever the error source.
            let msg = e.to_string();
            let first = msg.lines().find(|l| !l.trim().is_empty()).unwrap_or("failed");
            eprintln!("error: {}", first.trim_start_matches("error: "));
            ExitCode::FAILURE
        }
    }
}
