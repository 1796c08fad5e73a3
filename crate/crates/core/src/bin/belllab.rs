use belllab::cli::{execute, Args};
use clap::Parser;

fn main() {
    let args = Args::parse();
    let code = execute(&args, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
