//! Batch front end: `gwl <command> [flags]`.

pub mod config;
pub mod error;
pub mod run;

use std::ffi::OsString;

use clap::Parser;

pub use config::{Cli, Command, Opts, RunConfig, UpdateKind};
pub use error::CliError;
pub use run::{load_dataset, run};

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Diagnostics go to stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match RunConfig::resolve(cli.command, cli.opts).and_then(|cfg| run(&cfg)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("gwl: {e}");
            e.exit_code()
        }
    }
}
