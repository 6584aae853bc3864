use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use sphpoly_cli::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match sphpoly_cli::run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(out.text.as_bytes());
            let _ = stdout.flush();
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
