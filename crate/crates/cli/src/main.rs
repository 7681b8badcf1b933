use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use quasipos_cli::{render_text, run_report, Cli};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors, not consistency failures
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run_report(&cli) {
        Ok(output) => {
            if cli.options.json {
                println!("{}", output.to_json());
            } else {
                print!("{}", render_text(&output));
            }
            ExitCode::from(output.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
