//! Derived beam quantities: waist, divergence, spot size, and the
//! Coulomb deflection angle used as a scale for impact parameters.

use vortexff::{coulomb_angle, BeamParams};

fn main() -> vortexff::Result<()> {
    // 100 bohr light, Rayleigh range 10^4 bohr
    let beam = BeamParams::new(100.0, 1e4, 0, 1)?;
    println!("k        = {:.6} 1/bohr", beam.k());
    println!("w0       = {:.4} bohr", beam.waist());
    println!(
        "theta_d  = {:.6} rad (paraxial warning: {})",
        beam.divergence(),
        beam.paraxial_warning()
    );

    println!("\n{:>12} {:>14} {:>12}", "z", "w(z)", "gouy");
    for z in [0.0, 1e3, 1e4, 1e5, 1e6] {
        println!("{z:>12.0} {:>14.4} {:>12.6}", beam.beam_width(z), beam.gouy_phase(z));
    }

    // tight focus trips the paraxial check
    let tight = beam.with_rayleigh_range(5.0)?;
    println!(
        "\nz_R = 5: theta_d = {:.1} deg, warning {}",
        tight.divergence().to_degrees(),
        tight.paraxial_warning()
    );

    println!("\n{:>8} {:>14} {:>14}", "b", "ray angle", "Coulomb");
    for b in [1.0, 10.0, 100.0] {
        println!(
            "{b:>8} {:>14.6e} {:>14.6e}",
            beam.divergence_angle(b)?,
            coulomb_angle(b, 1.0)?
        );
    }
    Ok(())
}
