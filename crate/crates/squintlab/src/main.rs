use clap::Parser;

fn main() {
    let _ = squintlab::error::Result::Ok(());
    let _args = Args::parse();
    eprintln!("{{\"error\":\"not yet implemented\"}}");
    std::process::exit(2);
}

#[derive(Parser)]
struct Args {}
