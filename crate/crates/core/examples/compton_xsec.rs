//! Thomson and Compton cross sections for a polarized Gaussian beam.

use vortexff::formfactor::TransitionDensity;
use vortexff::observables::{compton_dcs, thomson_dcs, PolarizationPair, R0};
use vortexff::{vortex_ff, AtomicState, BeamParams, ScatteringGeometry, Transition, Vec3};

fn main() -> vortexff::Result<()> {
    let s1 = AtomicState::ground();
    let grid = Transition::new(s1, s1).default_grid()?;
    let beam = BeamParams::new(10.0, 1e3, 0, 0)?;
    let omega = beam.k();
    println!("r0 = {R0:e} m; cross sections below in units of r0^2");
    println!(
        "{:>6} {:>12} {:>12} {:>12} {:>12}",
        "theta", "thomson_x", "thomson_y", "|M_v|^2", "compton_y"
    );
    for deg in [0.0, 30.0, 60.0, 90.0, 120.0, 180.0] {
        let geom = ScatteringGeometry::for_beams(&beam, &beam, f64::to_radians(deg))?;
        let tx = thomson_dcs(
            &PolarizationPair::projected(Vec3::new(1.0, 0.0, 0.0), &geom)?,
            omega,
            omega,
        )?;
        let ty = thomson_dcs(
            &PolarizationPair::projected(Vec3::new(0.0, 1.0, 0.0), &geom)?,
            omega,
            omega,
        )?;
        let m = vortex_ff(&s1, &s1, &beam, &beam, &geom, &grid)?.value;
        println!(
            "{deg:>6} {tx:>12.6} {ty:>12.6} {:>12.6} {:>12.6}",
            m.norm_sqr(),
            compton_dcs(m, ty)
        );
    }
    Ok(())
}
