use clap::Parser;
use zitter_cli::app::{run, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = run(cli) {
        eprintln!("zitter: {e}");
        std::process::exit(e.exit_code());
    }
}
