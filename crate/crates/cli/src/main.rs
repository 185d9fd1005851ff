use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use regge_cli::commands::{run, Cli, EXIT_INPUT};

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INPUT) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = run(&cli);
    for line in &outcome.diagnostics {
        eprintln!("{line}");
    }
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(outcome.render(cli.format).as_bytes());
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{}\n", outcome.json)) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_INPUT);
        }
    }
    ExitCode::from(outcome.code)
}
