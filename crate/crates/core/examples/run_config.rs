//! Runs a configuration file and prints CSV, like `vortexff run`.
//!
//! cargo run --example run_config -- configs/xsec.toml

use vortexff::config::{parse_config, Format};
use vortexff::output::render;
use vortexff::run::run;

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/configs/plane_limit.toml").into());
    let result = std::fs::read_to_string(&path)
        .map_err(|e| vortexff::Error::Io(format!("{path}: {e}")))
        .and_then(|text| parse_config(&text))
        .and_then(|cfg| run(&cfg));
    match result {
        Ok(out) => print!("{}", render(&out, Format::Csv)),
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(e.exit_code());
        }
    }
}
