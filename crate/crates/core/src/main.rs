use std::process::ExitCode;

use clap::Parser;
use mamlab::cli::{run_fixture, run_text, Args, Command, Options, EXIT_INPUT};

fn main() -> ExitCode {
    let args = Args::parse();
    let opts = Options::from(&args);
    let outcome = if args.command == Command::Fixtures {
        run_fixture(&args.input, &opts)
    } else {
        match std::fs::read_to_string(&args.input) {
            Ok(text) => run_text(args.command, &text, &opts),
            Err(e) => {
                eprintln!("mamlab: cannot read {}: {e}", args.input);
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
    };
    for w in outcome.report["warnings"].as_array().into_iter().flatten() {
        eprintln!("mamlab: warning: {}", w.as_str().unwrap_or_default());
    }
    if let Some(err) = outcome.report.get("error") {
        eprintln!("mamlab: {}", err["message"].as_str().unwrap_or("error"));
    }
    let text = outcome.render();
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("mamlab: cannot write {path}: {e}");
                return ExitCode::from(EXIT_INPUT as u8);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(outcome.code as u8)
}
