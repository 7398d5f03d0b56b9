use std::process::ExitCode;

use reesse_cli::{execute, parse_args};

fn main() -> ExitCode {
    let cli = match parse_args(std::env::args_os()) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match execute(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("reesse: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
