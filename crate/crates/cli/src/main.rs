use clap::Parser;
use pairswap_cli::{run, Cli, Command, EXIT_INVARIANT, EXIT_OK};
use std::process::ExitCode;

fn json_path(cli: &Cli) -> Option<std::path::PathBuf> {
    match &cli.command {
        Command::States(a) => a.common.json.clone(),
        Command::Pair(a) => a.common.json.clone(),
        Command::Replicate(a) => a.common.json.clone(),
        Command::DfsAudit(a) => a.common.json.clone(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if let Some(path) = json_path(&cli) {
                if let Err(e) = std::fs::write(&path, &out.json) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(pairswap_cli::EXIT_BAD_INPUT as u8);
                }
            }
            if out.invariant_failure {
                ExitCode::from(EXIT_INVARIANT as u8)
            } else {
                ExitCode::from(EXIT_OK as u8)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
