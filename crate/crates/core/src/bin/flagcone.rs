use clap::Parser;

fn main() {
    std::process::exit(flagcone::cli::main_with(flagcone::cli::Cli::parse()));
}
