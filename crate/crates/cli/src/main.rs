use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use topact_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, code) = run(&cli);
    print!("{out}");
    let _ = std::io::stdout().flush();
    match code {
        Ok(c) => ExitCode::from(c),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
