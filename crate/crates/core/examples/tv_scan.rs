//! T_v against Rayleigh range through the run API. Falls off as 1/z_R.

use vortexff::config::parse_config;
use vortexff::run::run;

fn main() -> vortexff::Result<()> {
    let cfg = parse_config(include_str!("../configs/tv_scan.toml"))?;
    let out = run(&cfg)?;
    let zr = out.columns.iter().position(|c| *c == "sweep_value").unwrap();
    let tv = out.columns.iter().position(|c| *c == "T_v").unwrap();
    println!("{:>10} {:>14} {:>12}", "z_R", "T_v", "z_R * T_v");
    for row in &out.rows {
        println!("{:>10.1} {:>14.6e} {:>12.6}", row[zr], row[tv], row[zr] * row[tv]);
    }
    Ok(())
}
