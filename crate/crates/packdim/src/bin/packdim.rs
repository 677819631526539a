use clap::Parser;
use packdim::cli::{run, Cli, ErrorRecord};
use packdim::Error;

fn main() {
    let cli = Cli::parse();
    let to_stdout = cli.out.is_none();
    match run(&cli.into_config()) {
        Ok(outcome) => {
            if to_stdout {
                eprintln!("{outcome}");
            } else {
                println!("{outcome}");
            }
        }
        Err(e) => {
            let rec = ErrorRecord::from(&e);
            eprintln!("{}", serde_json::to_string(&rec).unwrap_or_else(|_| e.to_string()));
            std::process::exit(if matches!(e, Error::Config(_)) { 2 } else { 1 });
        }
    }
}
