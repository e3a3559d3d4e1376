use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use bcsquare_cli::{execute, Cli, Failure};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(64),
            };
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let out = execute(cli)?;
    if let (Some(path), Some(dot)) = (&cli.dot, &out.dot) {
        std::fs::write(path, dot).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    if cli.json {
        let json = serde_json::to_string_pretty(&out.report).map_err(|e| Failure::Internal(e.to_string()))?;
        let _ = writeln!(std::io::stdout().lock(), "{json}");
    } else {
        let _ = write!(std::io::stdout().lock(), "{}", out.text);
    }
    Ok(out.report.verdict.exit_code())
}
