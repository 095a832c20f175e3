use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use um_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(&cli, &mut out);
    let flushed = out.flush();
    match (result, flushed) {
        (Ok(outcome), Ok(())) => ExitCode::from(outcome.code() as u8),
        (Err(e), _) => {
            eprintln!("um: {e:#}");
            ExitCode::from(2)
        }
        (_, Err(e)) => {
            eprintln!("um: {e}");
            ExitCode::from(2)
        }
    }
}
