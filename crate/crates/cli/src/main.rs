mod args;
mod commands;
mod table;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use log::LevelFilter;

use crate::args::Cli;
use crate::commands::{run, Usage};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Log level from `LSCAT_LOG`; warnings only when unset.
fn log_level() -> Result<LevelFilter, String> {
    match std::env::var("LSCAT_LOG") {
        Err(_) => Ok(LevelFilter::Warn),
        Ok(v) => match v.as_str() {
            "quiet" => Ok(LevelFilter::Off),
            "info" => Ok(LevelFilter::Info),
            "debug" => Ok(LevelFilter::Debug),
            other => Err(format!("LSCAT_LOG must be quiet, info or debug, got {other:?}")),
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match log_level() {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    };
    env_logger::Builder::new().filter_level(level).format_timestamp(None).init();

    match run(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(outcome.output.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(EXIT_FAIL);
            }
            if outcome.failed {
                ExitCode::from(EXIT_FAIL)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.downcast_ref::<Usage>().is_some()
                || matches!(e.downcast_ref::<lscat_core::Error>(), Some(lscat_core::Error::UnknownEntry { .. }));
            ExitCode::from(if usage { EXIT_USAGE } else { EXIT_FAIL })
        }
    }
}
