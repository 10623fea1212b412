use std::io;
use std::process::ExitCode;

use clap::Parser;

use semiforest::cli::{self, Cli, EnumerationRequest};

fn main() -> ExitCode {
    let cli = Cli::try_parse().unwrap_or_else(|e| e.exit());
    let request = EnumerationRequest::from(cli);
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    match cli::run(&request, &mut out) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e}");
            if e.exit_code() == 2 {
                eprintln!("usage: semiforest <count|list|irreducible|verify|bench> --help");
            }
            ExitCode::from(e.exit_code())
        }
    }
}
