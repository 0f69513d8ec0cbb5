use std::process::ExitCode;

use clap::Parser;

use coset_classes::cli::{run, Args};

fn main() -> ExitCode {
    let args = Args::parse();
    let code = run(&args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    ExitCode::from(code)
}
