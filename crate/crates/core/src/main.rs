use clap::Parser;
use trace_codes::cli::{run, Cli};

fn main() {
    std::process::exit(run(Cli::parse()));
}
