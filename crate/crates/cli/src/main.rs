mod caps;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use commands::{execute, Cli, Status};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = match caps::Caps::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match execute(&cli, &caps) {
        Ok(out) => {
            if let Some(path) = &cli.common().out {
                if let Err(e) = std::fs::write(path, eqloc::document::to_text(&out.doc)) {
                    eprintln!("error: cannot write {path}: {e}");
                    return ExitCode::from(1);
                }
            }
            if cli.common().json {
                print!("{}", eqloc::document::to_text(&out.doc));
            } else {
                print!("{}", out.human);
            }
            match out.status {
                Status::Decisive => ExitCode::SUCCESS,
                Status::Inconclusive => ExitCode::from(2),
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
