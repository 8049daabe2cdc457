use clap::Parser;

fn main() {
    let cli = copcalc::cli::Cli::parse();
    std::process::exit(copcalc::cli::run(cli));
}
