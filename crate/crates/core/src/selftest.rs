//! Quick oracle suite behind `vortexff selftest`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::atom::AtomicState;
use crate::beam::{coulomb_angle, BeamParams};
use crate::formfactor::{plane_wave_ff, Transition, TransitionDensity};
use crate::observables::{adaptive_b_profile, parseval_check, BGridOptions, QProfile};
use crate::vec3::Vec3;

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, worst: f64, tol: f64) -> Check {
    Check {
        name,
        passed: worst <= tol,
        detail: format!("worst deviation {worst:.3e} (tolerance {tol:.0e})"),
    }
}

fn failed(name: &'static str, e: crate::Error) -> Check {
    Check {
        name,
        passed: false,
        detail: e.to_string(),
    }
}

fn elastic_1s() -> crate::Result<f64> {
    let s = AtomicState::ground();
    let grid = Transition::new(s, s).default_grid()?;
    let mut worst: f64 = 0.0;
    for q in [0.1, 0.5, 1.0, 2.0, 5.0] {
        let exact = (1.0 + q * q / 4.0f64).powi(-2);
        let m = plane_wave_ff(&s, &s, Vec3::new(0.0, 0.0, q), &grid)?.value;
        worst = worst.max((m - exact).norm() / exact);
    }
    Ok(worst)
}

fn lg_normalization() -> crate::Result<f64> {
    let mut worst: f64 = 0.0;
    for p in 0..=3 {
        for ell in -4..=4 {
            let b = BeamParams::new(100.0, 1e4, p, ell)?;
            for z in [-2e4, -3e3, 0.0, 5e3, 4e4] {
                worst = worst.max((b.transverse_norm(z, 64)? - 1.0).abs());
            }
        }
    }
    Ok(worst)
}

fn geometry() -> crate::Result<f64> {
    let b = BeamParams::new(100.0, 1e4, 0, 1)?;
    let z = 1e6 * b.rayleigh_range();
    let asym = (b.beam_width(z) / z - b.waist() / b.rayleigh_range()).abs() / (b.waist() / b.rayleigh_range());
    let tan = (b.divergence_angle(b.rayleigh_range())? - PI / 4.0).abs();
    let coulomb = (coulomb_angle(1.5, 3.0)? - PI / 2.0).abs();
    Ok(asym.max(tan).max(coulomb))
}

fn shift() -> crate::Result<f64> {
    let s = AtomicState::ground();
    let q = Vec3::new(0.3, -0.2, 0.9);
    let b = Vec3::new(2.0, 1.0, -0.5);
    let grid = Transition::new(s, s).default_grid()?.with_nodes(48, 2);
    let m0 = plane_wave_ff(&s, &s, q, &grid)?.value;
    let moved = s.with_center(b);
    let mb = plane_wave_ff(
        &moved,
        &moved,
        q,
        &Transition::new(moved, moved).default_grid()?.with_nodes(48, 2),
    )?
    .value;
    Ok((mb - m0 * Complex64::from_polar(1.0, q.dot(b))).norm() / m0.norm())
}

fn gaussian_parseval() -> crate::Result<f64> {
    let (n_rho, n_phi) = QProfile::resolution_for(2.0, 18.0);
    let fq = QProfile::gaussian(1.0, 4.0, n_rho, n_phi)?;
    let ab = adaptive_b_profile(&fq, BGridOptions::for_profile(&fq))?;
    Ok(parseval_check(&fq, &ab.profile)?.rel_diff)
}

type Case = (&'static str, fn() -> crate::Result<f64>, f64);

/// Runs every check; never panics.
pub fn run_selftest() -> Vec<Check> {
    let cases: [Case; 5] = [
        ("hydrogen 1s elastic form factor", elastic_1s, 1e-6),
        ("Laguerre-Gauss transverse normalization", lg_normalization, 1e-8),
        ("beam geometry identities", geometry, 1e-10),
        ("shift property", shift, 1e-6),
        ("Gaussian Parseval pair", gaussian_parseval, 1e-4),
    ];
    cases
        .into_iter()
        .map(|(name, f, tol)| match f() {
            Ok(v) => check(name, v, tol),
            Err(e) => failed(name, e),
        })
        .collect()
}
