use std::io::Write;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let out = folia_cli::run(&args);
    if !out.stdout.is_empty() {
        print!("{}", out.stdout);
    }
    if !out.stderr.is_empty() {
        eprint!("{}", out.stderr);
    }
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
