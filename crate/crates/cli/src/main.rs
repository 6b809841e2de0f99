use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use tribquat_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli);
    let rendered = outcome.render(cli.format);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(rendered.as_bytes());
    ExitCode::from(outcome.code as u8)
}
