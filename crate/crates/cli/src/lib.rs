//! Command-line front end: parses a run configuration, executes the mapped
//! library operation over its grid and renders a versioned [`Report`].
//!
//! Exit statuses: 0 all checks pass, 1 some check fails, 2 configuration
//! error, 3 numerical non-convergence.

pub mod args;
pub mod commands;
pub mod report;
pub mod suite;

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde_json::json;

use crate::args::{Cli, Command, Format};
pub use crate::report::Report;
use crate::suite::SuiteOptions;

/// Environment variable overriding the directory reports are written to.
pub const OUT_DIR_ENV: &str = "HCOTH_OUT_DIR";

#[derive(Debug)]
pub enum RunError {
    Config(String),
    Io(io::Error),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

impl std::fmt::Display for RunError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RunError::Config(m) => write!(f, "configuration error: {m}"),
            RunError::Io(e) => write!(f, "output error: {e}"),
        }
    }
}

impl std::error::Error for RunError {}

/// Everything that determines the rows, echoed into the report.
fn config_echo(cli: &Cli) -> serde_json::Value {
    json!({
        "command": cli.command,
        "quad": cli.quad,
        "seed": cli.seed,
    })
}

pub fn execute(cli: &Cli) -> Result<Report, RunError> {
    let cfg = cli.quad.config();
    cfg.validate().map_err(|e| RunError::Config(e.to_string()))?;
    let echo = config_echo(cli);
    match &cli.command {
        Command::Constants(a) => commands::constants(a, &cfg, echo),
        Command::Weights(a) => commands::weights(a, &cfg, echo),
        Command::Verify(a) => commands::verify(a, &cfg, echo),
        Command::Sharpness(a) => commands::sharpness(a, &cfg, echo),
        Command::Opnorm(a) => commands::opnorm(a, &cfg, echo),
        Command::Suite(a) => {
            let selected = match &a.criteria {
                Some(list) => list.0.clone(),
                None => (1..=10).collect(),
            };
            if selected.is_empty() {
                return Err(RunError::Config("--criteria: empty grid".into()));
            }
            if let Some(c) = selected.iter().find(|c| !(1..=10).contains(*c)) {
                return Err(RunError::Config(format!("--criteria: no criterion {c}")));
            }
            let opts = SuiteOptions {
                seed: cli.seed,
                k1_convention: if a.inject_k1_typo {
                    hilbert_coth::specfun::K1Convention::AsPrinted
                } else {
                    hilbert_coth::specfun::K1Convention::Corrected
                },
            };
            Ok(suite::report(&selected, &cfg, &opts, echo))
        }
    }
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Human => report.to_human(),
    }
}

/// Where the report goes: `--output`, re-rooted under `$HCOTH_OUT_DIR` when
/// that is set; with no `--output`, `$HCOTH_OUT_DIR/<command>.<ext>`; else
/// standard output (`None`).
pub fn output_path(requested: Option<&Path>, out_dir: Option<&Path>, command: &str, format: Format) -> Option<PathBuf> {
    match (requested, out_dir) {
        (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
        (Some(p), _) => Some(p.to_path_buf()),
        (None, Some(dir)) => Some(dir.join(format!("{command}.{}", format.extension()))),
        (None, None) => None,
    }
}

/// Opens the destination before any computation, so that an unwritable path
/// is reported as a configuration error rather than after a long run.
pub fn open_output(path: &Path) -> Result<fs::File, RunError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| RunError::Config(format!("{}: {e}", parent.display())))?;
    }
    fs::File::create(path).map_err(|e| RunError::Config(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn output_path_resolution() {
        let dir = Path::new("/tmp/out");
        assert_eq!(output_path(None, None, "suite", Format::Json), None);
        assert_eq!(
            output_path(None, Some(dir), "suite", Format::Json),
            Some(PathBuf::from("/tmp/out/suite.json"))
        );
        assert_eq!(
            output_path(Some(Path::new("r.csv")), Some(dir), "weights", Format::Csv),
            Some(PathBuf::from("/tmp/out/r.csv"))
        );
        assert_eq!(
            output_path(Some(Path::new("/abs/r.csv")), Some(dir), "weights", Format::Csv),
            Some(PathBuf::from("/abs/r.csv"))
        );
    }
}
