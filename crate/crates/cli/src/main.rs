use std::process::ExitCode;

use clap::Parser;
use gentrig_cli::{config::PRECISION_ENV, run, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let env = std::env::var(PRECISION_ENV).ok();
    let stdout = std::io::stdout().lock();
    match run(&cli, env.as_deref(), stdout) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gentrig: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
