//! Entry point: parse arguments, run the command, exit with its code.

use clap::Parser;
use sullivan_cli::run::{execute, Cli, EXIT_INPUT};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version print to stdout and exit 0; genuine
            // usage errors print to stderr and exit as input errors.
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    std::process::exit(execute(cli));
}
