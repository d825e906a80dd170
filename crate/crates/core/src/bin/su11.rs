use clap::Parser;

fn main() {
    let cli = su11::cli::Cli::parse();
    if let Err(e) = su11::cli::run(cli) {
        eprintln!("error: {e}");
        std::process::exit(e.exit_code());
    }
}
