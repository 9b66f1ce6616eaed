use std::io;

fn main() {
    let stdout = io::stdout();
    let stderr = io::stderr();
    let mut out = io::BufWriter::new(stdout.lock());
    let mut err = stderr.lock();
    let status = deals_cli::run(std::env::args_os(), &mut out, &mut err);
    drop(out);
    std::process::exit(status);
}
