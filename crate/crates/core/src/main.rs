use clap::Parser;
use nsdial::cli::{run, Cli};

fn main() {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let out = run(&cli, &argv[1..]);
    print!("{}", out.text);
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, out.report.to_json()) {
            eprintln!("{}: {e}", path.display());
            std::process::exit(2);
        }
    }
    for d in out.report.items.iter().filter_map(|i| i.diagnostic.as_ref()) {
        eprintln!("{d}");
    }
    std::process::exit(out.exit_code());
}
