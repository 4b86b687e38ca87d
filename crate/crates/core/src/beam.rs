//! Laguerre-Gauss twisted-photon modes and beam geometry.
//!
//! A mode `u_{p,ℓ}` is area-normalized at every `z`:
//! `∫∫ |u|² ρ dρ dφ = 1`. Its phase carries the azimuthal winding `e^{iℓφ}`,
//! the wavefront curvature `kρ²z / 2(z² + z_R²)` and minus the Gouy phase
//! `(2p + |ℓ| + 1) arctan(z / z_R)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::PolarRule;
use crate::specfun::{laguerre_unchecked, ln_factorial};
use crate::vec3::Vec3;

/// Divergence angle at or above which the paraxial description is suspect.
pub const PARAXIAL_LIMIT: f64 = 30.0 * PI / 180.0;

/// One Laguerre-Gauss mode. Lengths in bohr.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBeam", into = "RawBeam")]
pub struct BeamParams {
    wavelength: f64,
    rayleigh_range: f64,
    p: u32,
    ell: i32,
    k: f64,
    waist: f64,
    norm: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBeam {
    wavelength: f64,
    rayleigh_range: f64,
    #[serde(default)]
    p: u32,
    #[serde(default)]
    ell: i32,
}

impl TryFrom<RawBeam> for BeamParams {
    type Error = Error;
    fn try_from(r: RawBeam) -> Result<Self> {
        BeamParams::new(r.wavelength, r.rayleigh_range, r.p, r.ell)
    }
}

impl From<BeamParams> for RawBeam {
    fn from(b: BeamParams) -> Self {
        RawBeam {
            wavelength: b.wavelength,
            rayleigh_range: b.rayleigh_range,
            p: b.p,
            ell: b.ell,
        }
    }
}

impl BeamParams {
    pub fn new(wavelength: f64, rayleigh_range: f64, p: u32, ell: i32) -> Result<Self> {
        if !(wavelength > 0.0) || !wavelength.is_finite() {
            return Err(Error::domain(format!("wavelength must be positive, got {wavelength}")));
        }
        if !(rayleigh_range > 0.0) || !rayleigh_range.is_finite() {
            return Err(Error::domain(format!(
                "Rayleigh range must be positive, got {rayleigh_range}"
            )));
        }
        let abs_l = ell.unsigned_abs();
        let ln_norm = 0.5 * ((2.0 / PI).ln() + ln_factorial(p) - ln_factorial(p + abs_l));
        Ok(BeamParams {
            wavelength,
            rayleigh_range,
            p,
            ell,
            k: 2.0 * PI / wavelength,
            waist: (wavelength * rayleigh_range / PI).sqrt(),
            norm: ln_norm.exp(),
        })
    }

    pub fn wavelength(&self) -> f64 {
        self.wavelength
    }

    pub fn rayleigh_range(&self) -> f64 {
        self.rayleigh_range
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ell(&self) -> i32 {
        self.ell
    }

    /// Wavenumber `2π/λ`.
    pub fn k(&self) -> f64 {
        self.k
    }

    /// Beam waist `w0 = √(λ z_R / π)`.
    pub fn waist(&self) -> f64 {
        self.waist
    }

    pub fn with_rayleigh_range(&self, z_r: f64) -> Result<Self> {
        Self::new(self.wavelength, z_r, self.p, self.ell)
    }

    pub fn with_mode(&self, p: u32, ell: i32) -> Result<Self> {
        Self::new(self.wavelength, self.rayleigh_range, p, ell)
    }

    pub fn with_wavelength(&self, wavelength: f64) -> Result<Self> {
        Self::new(wavelength, self.rayleigh_range, self.p, self.ell)
    }

    /// `arctan(w0 / z_R)`, the far-field divergence of the `1/e²` envelope.
    pub fn divergence(&self) -> f64 {
        (self.waist / self.rayleigh_range).atan()
    }

    /// Set when the divergence reaches [`PARAXIAL_LIMIT`].
    pub fn paraxial_warning(&self) -> bool {
        self.divergence() >= PARAXIAL_LIMIT
    }

    /// `w(z) = w0 √(1 + z²/z_R²)`.
    pub fn beam_width(&self, z: f64) -> f64 {
        self.waist * (1.0 + (z / self.rayleigh_range).powi(2)).sqrt()
    }

    /// `(2p + |ℓ| + 1) arctan(z / z_R)`.
    pub fn gouy_phase(&self, z: f64) -> f64 {
        self.gouy_order() * (z / self.rayleigh_range).atan()
    }

    fn gouy_order(&self) -> f64 {
        (2 * self.p + self.ell.unsigned_abs() + 1) as f64
    }

    /// Everything in `u` except `e^{iℓφ}`: real amplitude and the remaining
    /// phase at `(rho, z)`.
    #[inline]
    fn envelope(&self, rho: f64, z: f64) -> (f64, f64) {
        let zr = self.rayleigh_range;
        let w2 = self.waist * self.waist * (1.0 + (z / zr).powi(2));
        let w = w2.sqrt();
        let s = rho * rho / w2;
        let abs_l = self.ell.unsigned_abs();
        let radial = if abs_l == 0 {
            1.0
        } else {
            (2.0 * s).sqrt().powi(abs_l as i32)
        };
        let amp = self.norm / w * radial * (-s).exp() * laguerre_unchecked(self.p, abs_l as f64, 2.0 * s);
        let phase = self.k * rho * rho * z / (2.0 * (z * z + zr * zr)) - self.gouy_order() * (z / zr).atan();
        (amp, phase)
    }

    /// Complex mode amplitude `u_{p,ℓ}(ρ, z, φ)` in the beam frame.
    pub fn lg_mode(&self, rho: f64, z: f64, phi: f64) -> Complex64 {
        if self.ell != 0 && rho == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let (amp, phase) = self.envelope(rho, z);
        Complex64::from_polar(amp, phase + self.ell as f64 * phi)
    }

    /// `u_{p,ℓ}` at a Cartesian point of the beam frame (`z` along the beam).
    #[inline]
    pub fn lg_mode_at(&self, r: Vec3) -> Complex64 {
        let rho = r.rho();
        if self.ell != 0 && rho == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        let (amp, phase) = self.envelope(rho, r.z);
        let base = Complex64::from_polar(amp, phase);
        if self.ell == 0 {
            return base;
        }
        let winding = Complex64::new(r.x / rho, r.y / rho).powi(self.ell.abs());
        if self.ell > 0 {
            base * winding
        } else {
            base * winding.conj()
        }
    }

    /// `∫∫ |u(ρ, z, φ)|² ρ dρ dφ` by polar quadrature out to `8 w(z)`.
    pub fn transverse_norm(&self, z: f64, radial_nodes: usize) -> Result<f64> {
        let rule = PolarRule::new(8.0 * self.beam_width(z), radial_nodes, 4)?;
        Ok(rule
            .integrate(|rho, phi| Complex64::new(self.lg_mode(rho, z, phi).norm_sqr(), 0.0))?
            .re)
    }

    /// Asymptotic ray angle `arctan(b / z_R)` of the intensity envelope
    /// through impact parameter `b`.
    pub fn divergence_angle(&self, b: f64) -> Result<f64> {
        if !(b >= 0.0) {
            return Err(Error::domain(format!("impact parameter must be non-negative, got {b}")));
        }
        Ok((b / self.rayleigh_range).atan())
    }
}

/// Classical Coulomb deflection `Θ_C = 2 arctan(d0 / 2b)` for impact
/// parameter `b` and head-on closest approach `d0`.
pub fn coulomb_angle(b: f64, d0: f64) -> Result<f64> {
    if !(b > 0.0) {
        return Err(Error::domain(format!("impact parameter must be positive, got {b}")));
    }
    if !(d0 > 0.0) {
        return Err(Error::domain(format!("closest approach must be positive, got {d0}")));
    }
    Ok(2.0 * (d0 / (2.0 * b)).atan())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::FRAC_PI_4;

    fn beam(p: u32, ell: i32) -> BeamParams {
        BeamParams::new(100.0, 2.0e3, p, ell).unwrap()
    }

    #[test]
    fn rejects_bad_params() {
        assert!(BeamParams::new(0.0, 1.0, 0, 0).is_err());
        assert!(BeamParams::new(1.0, -1.0, 0, 0).is_err());
        assert!(BeamParams::new(f64::NAN, 1.0, 0, 0).is_err());
    }

    #[test]
    fn derived_quantities() {
        let b = BeamParams::new(100.0, 1e4, 0, 1).unwrap();
        assert_relative_eq!(b.waist() * b.waist(), 100.0 * 1e4 / PI, max_relative = 1e-15);
        assert_relative_eq!(b.k(), 2.0 * PI / 100.0);
        assert!(!b.paraxial_warning());
        // w0/z_R = 1/√3 gives exactly 30°
        let wide = BeamParams::new(PI / 3.0, 1.0, 0, 0).unwrap();
        assert!(wide.paraxial_warning());
    }

    #[test]
    fn width_examples() {
        let b = beam(0, 0);
        let zr = b.rayleigh_range();
        assert_eq!(b.beam_width(0.0), b.waist());
        assert_relative_eq!(b.beam_width(zr), b.waist() * 2f64.sqrt(), max_relative = 1e-15);
        let z = 1e6 * zr;
        assert_relative_eq!(b.beam_width(z), b.waist() * z / zr, max_relative = 1e-10);
        assert_eq!(b.beam_width(-3.0 * zr), b.beam_width(3.0 * zr));
    }

    #[test]
    fn gouy_examples() {
        let b = beam(1, -2);
        let zr = b.rayleigh_range();
        assert_eq!(b.gouy_phase(0.0), 0.0);
        assert_relative_eq!(b.gouy_phase(zr), 5.0 * FRAC_PI_4, max_relative = 1e-15);
        assert_relative_eq!(b.gouy_phase(1e300), 2.5 * PI, max_relative = 1e-15);
        assert_eq!(b.gouy_phase(-0.3 * zr), -b.gouy_phase(0.3 * zr));
    }

    #[test]
    fn mode_examples() {
        let b = beam(0, 0);
        let u = b.lg_mode(0.0, 0.0, 1.234);
        assert_relative_eq!(u.re, (2.0 / PI).sqrt() / b.waist(), max_relative = 1e-15);
        assert_eq!(u.im, 0.0);
        assert_eq!(beam(2, 3).lg_mode(0.0, 500.0, 0.3), Complex64::new(0.0, 0.0));
        assert_eq!(
            beam(2, 3).lg_mode_at(Vec3::new(0.0, 0.0, 7.0)),
            Complex64::new(0.0, 0.0)
        );
    }

    #[test]
    fn cartesian_matches_polar() {
        for &(p, ell) in &[(0, 0), (1, 2), (2, -3), (0, -1)] {
            let b = beam(p, ell);
            for &(x, y, z) in &[(3.0, 4.0, 50.0), (-20.0, 7.0, -300.0), (0.5, -30.0, 0.0)] {
                let r = Vec3::new(x, y, z);
                let a = b.lg_mode_at(r);
                let c = b.lg_mode(r.rho(), z, y.atan2(x));
                assert!((a - c).norm() <= 1e-13 * c.norm().max(1e-300));
            }
        }
    }

    #[test]
    fn normalization_at_many_z() {
        for p in 0..=3 {
            for ell in -4..=4 {
                let b = beam(p, ell);
                let zr = b.rayleigh_range();
                for &z in &[0.0, 0.5, -0.5, 2.0, -2.0, 10.0, -10.0, 0.7] {
                    let n = b.transverse_norm(z * zr, 64).unwrap();
                    assert!((n - 1.0).abs() < 1e-8, "p={p} ell={ell} z={z}: {n}");
                }
            }
        }
    }

    #[test]
    fn phase_winding() {
        let b = beam(1, 3);
        for &d in &[0.1, 1.0, -2.5, 10.0] {
            let a = b.lg_mode(12.0, 300.0, 0.4 + d);
            let c = b.lg_mode(12.0, 300.0, 0.4) * Complex64::from_polar(1.0, 3.0 * d);
            assert!((a - c).norm() < 1e-14 * c.norm());
        }
    }

    #[test]
    fn handedness_is_conjugation_at_waist() {
        for &(p, ell) in &[(0, 1), (2, 3), (1, 4)] {
            let plus = beam(p, ell);
            let minus = beam(p, -ell);
            for &(rho, phi) in &[(5.0, 0.3), (30.0, -2.0), (80.0, 4.0)] {
                assert_eq!(minus.lg_mode(rho, 0.0, phi), plus.lg_mode(rho, 0.0, phi).conj());
            }
        }
    }

    #[test]
    fn radial_nodes_equal_p() {
        for p in 0..=4 {
            for ell in [0, 1, -2] {
                let b = beam(p, ell);
                let w = b.waist();
                let n = 4000;
                let mut changes = 0;
                let mut last = b.lg_mode(1e-6 * w, 0.0, 0.0).re;
                for i in 1..=n {
                    let v = b.lg_mode(6.0 * w * i as f64 / n as f64, 0.0, 0.0).re;
                    if v.signum() != last.signum() && v != 0.0 {
                        changes += 1;
                    }
                    last = v;
                }
                assert_eq!(changes, p, "p={p} ell={ell}");
            }
        }
    }

    #[test]
    fn divergence_angle_examples() {
        let b = beam(0, 0);
        assert_eq!(b.divergence_angle(0.0).unwrap(), 0.0);
        let w0 = b.waist();
        let expect = (b.wavelength() / (PI * w0)).atan();
        assert_relative_eq!(b.divergence_angle(w0).unwrap(), expect, max_relative = 1e-14);
        assert_relative_eq!(b.divergence_angle(b.rayleigh_range()).unwrap(), FRAC_PI_4);
        assert!(b.divergence_angle(-1.0).is_err());
    }

    #[test]
    fn coulomb_angle_examples() {
        assert_eq!(coulomb_angle(0.5, 1.0).unwrap(), PI / 2.0);
        assert_relative_eq!(
            coulomb_angle(1.0, 1.0).unwrap(),
            0.927_295_218_001_612_2,
            epsilon = 1e-15
        );
        assert!(coulomb_angle(0.0, 1.0).is_err());
        assert!(coulomb_angle(1.0, 0.0).is_err());
        let mut prev = PI;
        for i in 1..50 {
            let a = coulomb_angle(i as f64, 1.0).unwrap();
            assert!(a < prev && a > 0.0);
            prev = a;
        }
    }
}
