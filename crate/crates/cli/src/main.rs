use std::io::{self, BufWriter};

use clap::Parser;
use matcorr_cli::config::Cli;

fn main() {
    let cli = Cli::parse();
    let code = {
        let mut out = BufWriter::new(io::stdout().lock());
        let mut err = io::stderr().lock();
        matcorr_cli::run(&cli, &mut out, &mut err)
    };
    std::process::exit(code);
}
