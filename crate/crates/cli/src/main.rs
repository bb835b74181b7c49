use clap::Parser;
use ricci_cli::{run, RunConfig};

fn main() {
    let config = RunConfig::try_parse().unwrap_or_else(|e| e.exit());
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run(&config, &mut stdout.lock(), &mut stderr.lock());
    std::process::exit(code);
}
