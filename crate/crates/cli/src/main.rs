use std::process::ExitCode;

use clap::Parser;

use iontrap_cli::{exit_code, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli, &mut std::io::stdout().lock());
    if let Err(e) = &result {
        eprintln!("error: {e:#}");
    }
    ExitCode::from(exit_code(&result))
}
