//! Hydrogenic bound states: radial functions, spherical harmonics and the
//! box a quadrature needs to hold most of the density.

use vortexff::specfun::{hydrogenic_radial, spherical_harmonic};
use vortexff::{AtomicState, Vec3};

fn main() -> vortexff::Result<()> {
    println!("{:>6} {:>12} {:>12} {:>12}", "r", "R_10", "R_20", "R_21");
    for r in [0.0, 0.5, 1.0, 2.0, 4.0, 8.0] {
        println!(
            "{r:>6} {:>12.6} {:>12.6} {:>12.6}",
            hydrogenic_radial(1, 0, r)?,
            hydrogenic_radial(2, 0, r)?,
            hydrogenic_radial(2, 1, r)?
        );
    }
    println!(
        "\nY_11(pi/2, 0) = {:.6}",
        spherical_harmonic(1, 1, std::f64::consts::FRAC_PI_2, 0.0)?.re
    );

    for (n, l, m) in [(1, 0, 0), (2, 1, 1), (3, 2, -2)] {
        let s = AtomicState::at_origin(n, l, m)?;
        println!(
            "{n}{l}{m}: support radius {:.2} bohr (density floor 1e-12), psi(1,0,0) = {:.5}",
            s.support_radius(1e-12)?,
            s.wavefunction(Vec3::new(1.0, 0.0, 0.0)).re
        );
    }

    match AtomicState::at_origin(2, 2, 0) {
        Err(e) => println!("\nrejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
