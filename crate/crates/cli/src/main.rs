use std::process::ExitCode;

use clap::Parser;
use lame_floquet_cli::Cli;

fn main() -> ExitCode {
    // clap exits with status 2 on malformed arguments
    lame_floquet_cli::main_with(Cli::parse())
}
