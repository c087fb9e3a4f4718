use std::process::ExitCode;

use clap::Parser;
use qdd_cli::{error_json, execute, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(out) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            println!("{}", error_json(&err));
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
