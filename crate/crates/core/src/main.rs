use std::io::{self, Write};

fn main() {
    let mut out = io::BufWriter::new(io::stdout().lock());
    let code = certbounds::cli::run(std::env::args_os(), &mut out, &mut io::stderr());
    let _ = out.flush();
    drop(out);
    std::process::exit(code);
}
