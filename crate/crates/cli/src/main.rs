use std::process::ExitCode;

use clap::Parser;
use weightpoly_cli::{emit, run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| emit(&cli, &out).map(|()| out.success));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("weightpoly: check failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("weightpoly: {e:#}");
            ExitCode::from(2)
        }
    }
}
