use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use hilbert_coth_cli::args::Cli;
use hilbert_coth_cli::{execute, open_output, output_path, render, RunError, OUT_DIR_ENV};

fn run(cli: &Cli) -> Result<i32, RunError> {
    let out_dir = std::env::var_os(OUT_DIR_ENV).map(PathBuf::from);
    let path = output_path(cli.output.output.as_deref(), out_dir.as_deref(), cli.command.name(), cli.output.format);
    let file = path.as_deref().map(open_output).transpose()?;
    let report = execute(cli)?;
    let text = render(&report, cli.output.format);
    match file {
        Some(mut f) => {
            f.write_all(text.as_bytes()).map_err(RunError::Io)?;
            eprint!("{}", report.to_human());
        }
        None => print!("{text}"),
    }
    Ok(report.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("hilbert-coth: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
