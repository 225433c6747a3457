use clap::Parser;

use primewheel::cli::{run, Args};

fn main() {
    let args = Args::parse();
    let code = match args.into_config() {
        Ok(config) => {
            let stdout = std::io::stdout();
            match run(&config, &mut stdout.lock()) {
                Ok(code) => code,
                Err(error) => {
                    eprintln!("error: {error}");
                    error.exit_code()
                }
            }
        }
        Err(error) => {
            eprintln!("error: {error}");
            error.exit_code()
        }
    };
    std::process::exit(code);
}
