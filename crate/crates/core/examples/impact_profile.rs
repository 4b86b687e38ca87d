//! Impact-parameter amplitude from a momentum-space profile, with the
//! Parseval cross-check between the two representations.

use std::f64::consts::PI;
use vortexff::observables::{adaptive_b_profile, impact_amplitude, parseval_check, BGridOptions, QProfile};

fn main() -> vortexff::Result<()> {
    let (k, sigma) = (1.0, 4.0);
    let (n_rho, n_phi) = QProfile::resolution_for(2.0 * k, 18.0);
    let fq = QProfile::gaussian(k, sigma, n_rho, n_phi)?;
    println!(
        "q-grid {n_rho} x {n_phi}, sigma from q-space {:.10} (exact {:.10})",
        fq.sigma(),
        PI / (k * sigma).powi(2)
    );

    for b in [0.0, 2.0, 4.0, 8.0] {
        let a = impact_amplitude(&fq, [b, 0.0])?;
        let exact = (-b * b / (2.0 * sigma * sigma)).exp() / (k * sigma * sigma);
        println!("a({b}) = {:.10} (closed form {exact:.10})", a.value.re);
    }

    let bp = adaptive_b_profile(&fq, BGridOptions::for_profile(&fq))?;
    let report = parseval_check(&fq, &bp.profile)?;
    println!(
        "b-grid radius {:.2}: sigma_q {:.10}, sigma_b {:.10}, rel diff {:.2e}",
        bp.profile.grid.radius, report.sigma_q, report.sigma_b, report.rel_diff
    );
    Ok(())
}
