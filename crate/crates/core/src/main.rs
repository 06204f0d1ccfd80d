use clap::Parser;
use tga_core::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(lines) => {
            for line in lines {
                println!("{line}");
            }
        }
        Err(e) => {
            eprintln!("{}", e.to_json());
            std::process::exit(e.code);
        }
    }
}
