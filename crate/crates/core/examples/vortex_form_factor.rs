//! Vortex form factors: approach to the plane-wave value and the
//! azimuthal selection rule for an atom on the beam axis.

use vortexff::formfactor::TransitionDensity;
use vortexff::{vortex_ff, AtomicState, BeamParams, ScatteringGeometry, Transition};

fn main() -> vortexff::Result<()> {
    let s1 = AtomicState::ground();
    let grid = Transition::new(s1, s1).default_grid()?;
    println!("Gaussian beam, lambda = 100, theta = 0");
    for zr in [1e3, 1e4, 1e5] {
        let b = BeamParams::new(100.0, zr, 0, 0)?;
        let m = vortex_ff(&s1, &s1, &b, &b, &ScatteringGeometry::for_beams(&b, &b, 0.0)?, &grid)?;
        println!("  z_R = {zr:>7.0}: M_v - 1 = {:+.4e}", m.value.re - 1.0);
    }

    // angular momentum bookkeeping: m_i + l_i = m_f + l_f
    let p1 = AtomicState::at_origin(2, 1, 1)?;
    let grid = Transition::new(s1, p1).default_grid()?;
    let base = BeamParams::new(20.0, 100.0, 0, 0)?;
    println!("\n1s -> 2p(m=1), lambda = 20, z_R = 100");
    for (li, lf) in [(1, 0), (0, -1), (0, 0), (1, 1), (-1, 0)] {
        let bi = base.with_mode(0, li)?;
        let bf = base.with_mode(0, lf)?;
        let m = vortex_ff(
            &s1,
            &p1,
            &bi,
            &bf,
            &ScatteringGeometry::for_beams(&bi, &bf, 0.0)?,
            &grid,
        )?;
        let allowed = li == 1 + lf;
        println!(
            "  l_i={li:+} l_f={lf:+}  |M_v| = {:.3e}  {}",
            m.value.norm(),
            if allowed { "allowed" } else { "forbidden" }
        );
    }
    Ok(())
}
