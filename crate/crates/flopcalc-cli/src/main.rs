mod cli;
mod commands;
mod error;
mod output;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use cli::{Cli, Format, BUDGET_ENV};
use output::Sink;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => ExitCode::SUCCESS,
                _ => ExitCode::from(3),
            };
        }
    };
    let stdout = io::stdout();
    let mut sink = Sink::new(cli.format, BufWriter::new(stdout.lock()));
    let env = std::env::var(BUDGET_ENV).ok();
    let result = commands::resolve_budget(cli.budget, env.as_deref(), cli.heavy).and_then(|b| commands::run(&cli, b, &mut sink));
    let code = match result {
        Ok(()) => 0,
        Err(e) => {
            if cli.format == Format::Json {
                let _ = sink.error(&e);
            } else if !matches!(e, error::CliError::CheckFailed(_)) {
                eprintln!("error: {e}");
            }
            e.exit_code()
        }
    };
    let _ = sink.into_inner().flush();
    ExitCode::from(code as u8)
}
