use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use sphtrop_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("SPHTROP_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        // A pool that is already built (e.g. under a test harness) is fine.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let outcome = run(&cli.command);
    for line in &outcome.log {
        eprintln!("{line}");
    }
    if !outcome.output.is_empty() {
        let written = match &cli.command.opts().out {
            Some(path) => std::fs::write(path, &outcome.output).map_err(|e| format!("{}: {e}", path.display())),
            None => std::io::stdout().write_all(outcome.output.as_bytes()).map_err(|e| e.to_string()),
        };
        if let Err(e) = written {
            eprintln!("{}: i/o: {e}", cli.command.name());
            return ExitCode::from(1);
        }
    }
    ExitCode::from(outcome.code as u8)
}
