//! Plane-wave form factors against closed forms.

use vortexff::formfactor::TransitionDensity;
use vortexff::{plane_wave_ff, AtomicState, Transition, Vec3};

fn main() -> vortexff::Result<()> {
    let s1 = AtomicState::ground();
    let grid = Transition::new(s1, s1).default_grid()?;
    println!(
        "{:>6} {:>20} {:>20} {:>10}",
        "q", "M numeric", "(1+q^2/4)^-2", "err est"
    );
    for q in [0.1, 0.5, 1.0, 2.0, 5.0] {
        let m = plane_wave_ff(&s1, &s1, Vec3::new(0.0, 0.0, q), &grid)?;
        let exact = (1.0 + q * q / 4.0).powi(-2);
        println!(
            "{q:>6} {:>20.15} {exact:>20.15} {:>10.1e}",
            m.value.re, m.abs_error_estimate
        );
    }

    // 1s -> 2p0 along z: |M| = 6√2 q / (9/4 + q^2)^3
    let p0 = AtomicState::at_origin(2, 1, 0)?;
    let grid = Transition::new(s1, p0).default_grid()?;
    for q in [0.5, 1.0] {
        let m = plane_wave_ff(&s1, &p0, Vec3::new(0.0, 0.0, q), &grid)?;
        let exact = 6.0 * 2f64.sqrt() * q / (2.25 + q * q).powi(3);
        println!("1s->2p0 q={q}: |M| = {:.12}, closed form {exact:.12}", m.value.norm());
    }
    Ok(())
}
