//! Two-center interference: the structure factor of a pair of atoms and
//! the form factor of an atom displaced from the origin.

use vortexff::formfactor::TransitionDensity;
use vortexff::{plane_wave_ff, structure_factor, AtomicState, Transition, Vec3};

fn main() -> vortexff::Result<()> {
    let d = 1.4;
    let centers = [Vec3::new(0.0, 0.0, -d / 2.0), Vec3::new(0.0, 0.0, d / 2.0)];
    println!("{:>6} {:>12} {:>12}", "q_z", "|S|^2", "4cos^2(qd/2)");
    for q in [0.0, 0.5, 1.0, 2.0, 3.0] {
        let s = structure_factor(Vec3::new(0.0, 0.0, q), &centers)?;
        println!(
            "{q:>6} {:>12.8} {:>12.8}",
            s.norm_sqr(),
            4.0 * (q * d / 2.0).cos().powi(2)
        );
    }

    // a displaced atom picks up exactly the phase e^{iq·b}
    let q = Vec3::new(0.3, 0.0, 0.4);
    let b = Vec3::new(2.0, -1.0, 0.5);
    let s0 = AtomicState::ground();
    let sb = s0.with_center(b);
    let m0 = plane_wave_ff(&s0, &s0, q, &Transition::new(s0, s0).default_grid()?)?.value;
    let mb = plane_wave_ff(&sb, &sb, q, &Transition::new(sb, sb).default_grid()?)?.value;
    println!(
        "\nM(b)/M(0) = {:.12}, e^(iq.b) = {:.12}",
        mb / m0,
        num_complex::Complex64::from_polar(1.0, q.dot(b))
    );
    Ok(())
}
