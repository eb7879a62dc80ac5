//! Command-line front end for `helixforge`.
//!
//! [`dispatch`] is the whole program minus process plumbing, so tests can
//! drive it with in-memory streams.

mod cli;
mod commands;
pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::Parser;

use crate::cli::Cli;
use crate::config::{ConfigFile, CONFIG_ENV};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;

/// Runs one invocation, reading the config file named by `HELIXFORGE_CONFIG`.
pub fn dispatch<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
    dispatch_with_config(argv, config, out, err)
}

/// Like [`dispatch`] with an explicit config path instead of the environment.
pub fn dispatch_with_config<I, T>(
    argv: I,
    config: Option<PathBuf>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_ERROR
                }
            };
        }
    };
    let cfg = match config {
        Some(path) => match ConfigFile::load(&path) {
            Ok(c) => c,
            Err(e) => {
                let _ = writeln!(err, "error: config {}: {e}", path.display());
                return EXIT_ERROR;
            }
        },
        None => ConfigFile::default(),
    };
    match commands::run(cli.command, &cfg, out, err) {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&e) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            match e.downcast_ref::<helixforge::Error>() {
                Some(helixforge::Error::VerificationFailed { .. }) => EXIT_VERIFICATION,
                _ => EXIT_ERROR,
            }
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.chain().any(|c| {
        c.downcast_ref::<std::io::Error>()
            .is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe)
    })
}
