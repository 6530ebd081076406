//! Command-line front end: argument parsing, command dispatch and record output.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;
pub mod records;

use std::io::Write;

use config::{Cli, RunConfig};
use error::{CliError, EXIT_MISMATCH, EXIT_PASS};

/// Runs a parsed command line and returns the process exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cfg = RunConfig::from_cli(cli);
    let mut io = commands::Io { out, err };
    let result = commands::dispatch(&cli.command, &cfg, &mut io).and_then(|status| {
        io.out.flush()?;
        Ok::<_, CliError>(status)
    });
    match result {
        Ok(commands::Status::Pass) => EXIT_PASS,
        Ok(commands::Status::Mismatch) => EXIT_MISMATCH,
        Err(e) => {
            let _ = io.out.flush();
            let _ = writeln!(io.err, "error: {e}");
            e.exit_code()
        }
    }
}

/// Parses `args` (including the program name) and runs them, capturing both streams.
pub fn run_args<I, S>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    match Cli::try_parse_from(args) {
        Ok(cli) => {
            let (mut out, mut err) = (Vec::new(), Vec::new());
            let code = run(&cli, &mut out, &mut err);
            (
                code,
                String::from_utf8_lossy(&out).into_owned(),
                String::from_utf8_lossy(&err).into_owned(),
            )
        }
        Err(e) => (e.exit_code(), String::new(), e.to_string()),
    }
}
