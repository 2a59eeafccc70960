//! Command-line front end: every report is JSON on stdout, every failure a
//! single JSON line on stderr with a distinct exit code.

mod args;
mod commands;
mod render;

use std::process::ExitCode;

use clap::error::ErrorKind as ClapErrorKind;
use clap::Parser;
use k3lab::{Error, ErrorKind};
use serde_json::json;

use args::Cli;

const EXIT_PARSE: u8 = 1;
const EXIT_PRECONDITION: u8 = 2;
const EXIT_VERIFICATION: u8 = 3;

fn fail(code: u8, kind: &str, message: &str, position: Option<(usize, usize)>) -> ExitCode {
    let mut line = json!({ "error": kind, "message": message });
    if let Some((l, c)) = position {
        line["line"] = json!(l);
        line["column"] = json!(c);
    }
    eprintln!("{line}");
    ExitCode::from(code)
}

fn configure_threads() -> Result<(), String> {
    let Ok(text) = std::env::var("K3LAB_THREADS") else {
        return Ok(());
    };
    let n: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("K3LAB_THREADS must be a positive integer, got {text:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion
            ) =>
        {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let message = e.to_string();
            let first = message.lines().next().unwrap_or("invalid arguments");
            return fail(
                EXIT_PARSE,
                "parse",
                first.trim_start_matches("error: "),
                None,
            );
        }
    };
    if let Err(message) = configure_threads() {
        return fail(EXIT_PRECONDITION, "precondition", &message, None);
    }
    match commands::dispatch(&cli.command) {
        Ok(report) => {
            print!("{}", render::render(&report.value, cli.format));
            if report.verified {
                ExitCode::SUCCESS
            } else {
                fail(
                    EXIT_VERIFICATION,
                    "verification",
                    "report contains failures",
                    None,
                )
            }
        }
        Err(e) => {
            let position = match &e {
                Error::Parse { line, column, .. } => Some((*line, *column)),
                _ => None,
            };
            match e.kind() {
                ErrorKind::Parse => fail(EXIT_PARSE, "parse", &e.to_string(), position),
                ErrorKind::Precondition => {
                    fail(EXIT_PRECONDITION, "precondition", &e.to_string(), None)
                }
                ErrorKind::Verification => {
                    fail(EXIT_VERIFICATION, "verification", &e.to_string(), None)
                }
            }
        }
    }
}
