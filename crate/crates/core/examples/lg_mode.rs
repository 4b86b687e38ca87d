//! Laguerre-Gauss amplitudes: radial profile, phase winding, normalization.

use std::f64::consts::PI;
use vortexff::BeamParams;

fn main() -> vortexff::Result<()> {
    let beam = BeamParams::new(100.0, 1e4, 1, 2)?;
    let w0 = beam.waist();
    println!("LG p={} l={}, w0 = {w0:.3}", beam.p(), beam.ell());

    println!("\n{:>8} {:>14}", "rho/w0", "|u|^2 at z=0");
    for i in 0..=12 {
        let rho = 0.25 * i as f64 * w0;
        println!("{:>8.2} {:>14.6e}", rho / w0, beam.lg_mode(rho, 0.0, 0.0).norm_sqr());
    }

    // the phase advances by l * 2π around the axis
    let ring: Vec<f64> = (0..8)
        .map(|j| beam.lg_mode(w0, 0.0, j as f64 * PI / 4.0).arg())
        .collect();
    println!(
        "\narg u on the ring rho = w0: {:?}",
        ring.iter().map(|a| format!("{a:.3}")).collect::<Vec<_>>()
    );

    for z in [0.0, 1e4, 1e5] {
        println!("norm at z = {z:>8.0}: {:.15}", beam.transverse_norm(z, 64)?);
    }
    Ok(())
}
