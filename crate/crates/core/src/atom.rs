//! Hydrogenic target states, rigidly displaceable from the beam axis.
//!
//! The quantization axis of every state is the incoming beam axis `ẑ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{ylm_unchecked, RadialFn};
use crate::vec3::Vec3;

/// Relative density floor used to size quadrature boxes.
pub const DEFAULT_DENSITY_FLOOR: f64 = 1e-12;
/// Box half-width as a multiple of the support radius.
pub const DEFAULT_BOX_SCALE: f64 = 1.2;

/// Bound state `|N L M>` of hydrogen centered at `center` (bohr). The
/// transverse part of `center` is the impact parameter of the atom with
/// respect to the vortex axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawState", into = "RawState")]
pub struct AtomicState {
    n: i32,
    l: i32,
    m: i32,
    center: Vec3,
    radial: RadialFn,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawState {
    n: i32,
    l: i32,
    m: i32,
    #[serde(default)]
    center: Vec3,
}

impl TryFrom<RawState> for AtomicState {
    type Error = Error;
    fn try_from(r: RawState) -> Result<Self> {
        AtomicState::new(r.n, r.l, r.m, r.center)
    }
}

impl From<AtomicState> for RawState {
    fn from(s: AtomicState) -> Self {
        RawState {
            n: s.n,
            l: s.l,
            m: s.m,
            center: s.center,
        }
    }
}

impl AtomicState {
    pub fn new(n: i32, l: i32, m: i32, center: Vec3) -> Result<Self> {
        if n < 1 {
            return Err(Error::domain(format!("N must be at least 1, got {n}")));
        }
        if l < 0 || l >= n {
            return Err(Error::domain(format!("L must satisfy 0 ≤ L < N, got N={n}, L={l}")));
        }
        if m.abs() > l {
            return Err(Error::domain(format!("M must satisfy |M| <= L, got L={l}, M={m}")));
        }
        if !center.is_finite() {
            return Err(Error::domain("atom center must be finite"));
        }
        Ok(AtomicState {
            n,
            l,
            m,
            center,
            radial: RadialFn::new(n, l),
        })
    }

    /// State centered at the origin.
    pub fn at_origin(n: i32, l: i32, m: i32) -> Result<Self> {
        Self::new(n, l, m, Vec3::ZERO)
    }

    pub fn ground() -> Self {
        Self::at_origin(1, 0, 0).expect("1s is valid")
    }

    pub fn n(&self) -> i32 {
        self.n
    }

    pub fn l(&self) -> i32 {
        self.l
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn center(&self) -> Vec3 {
        self.center
    }

    /// The same state rigidly moved to `center`.
    pub fn with_center(mut self, center: Vec3) -> Self {
        self.center = center;
        self
    }

    /// The same state displaced by `shift`.
    pub fn displaced(self, shift: Vec3) -> Self {
        let c = self.center + shift;
        self.with_center(c)
    }

    /// `φ_NLM(r) = R_NL(|r - c|) Y_LM(r - c)`.
    #[inline]
    pub fn wavefunction(&self, r: Vec3) -> Complex64 {
        let d = r - self.center;
        let radial = self.radial.eval(d.norm());
        ylm_unchecked(self.l, self.m, d) * radial
    }

    fn radial_density(&self, r: f64) -> f64 {
        let v = self.radial.eval(r) * r;
        v * v
    }

    /// Smallest radius beyond which `r² R²` stays below `density_floor` times
    /// its maximum.
    pub fn support_radius(&self, density_floor: f64) -> Result<f64> {
        if !(density_floor > 0.0 && density_floor <= 1.0) {
            return Err(Error::domain(format!(
                "density floor must lie in (0, 1], got {density_floor}"
            )));
        }
        let nf = self.n as f64;
        let step = 0.01 * nf;
        let r_end = 20.0 * nf * nf + 60.0 * nf;
        let count = (r_end / step).ceil() as usize;
        let grid = |i: usize| i as f64 * step;

        let (imax, _) = (0..=count)
            .map(|i| (i, self.radial_density(grid(i))))
            .fold((0, f64::MIN), |acc, x| if x.1 > acc.1 { x } else { acc });
        let r_peak = golden_max(|r| self.radial_density(r), grid(imax.saturating_sub(1)), grid(imax + 1));
        let peak = self.radial_density(r_peak).max(self.radial_density(grid(imax)));
        let threshold = density_floor * peak;

        let last = (0..=count)
            .rev()
            .find(|&i| self.radial_density(grid(i)) >= threshold)
            .unwrap_or(imax);
        let (mut lo, mut hi) = if last == imax {
            (r_peak, grid(imax + 1))
        } else {
            (grid(last), grid(last + 1))
        };
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.radial_density(mid) >= threshold {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Ok(lo)
    }

    /// Axis-aligned box `[lo, hi]` that holds the state above `density_floor`.
    pub fn support_box(&self, density_floor: f64) -> Result<(Vec3, Vec3)> {
        let r = self.support_radius(density_floor)?;
        let d = Vec3::new(r, r, r);
        Ok((self.center - d, self.center + d))
    }
}

fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    for _ in 0..200 {
        if (b - a).abs() <= 1e-14 * b.abs().max(1.0) {
            break;
        }
        if f(c) > f(d) {
            b = d;
        } else {
            a = c;
        }
        c = b - g * (b - a);
        d = a + g * (b - a);
    }
    0.5 * (a + b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{integrate_3d, GridSpec};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn invariants_enforced() {
        assert!(AtomicState::at_origin(0, 0, 0).is_err());
        assert!(AtomicState::at_origin(1, 1, 0).is_err());
        assert!(AtomicState::at_origin(2, 1, 2).is_err());
        assert!(AtomicState::new(1, 0, 0, Vec3::new(f64::NAN, 0.0, 0.0)).is_err());
        let e = AtomicState::at_origin(1, 1, 0).unwrap_err().to_string();
        assert!(e.contains("0 ≤ L < N"), "{e}");
    }

    #[test]
    fn wavefunction_examples() {
        let s = AtomicState::ground();
        assert_relative_eq!(s.wavefunction(Vec3::ZERO).re, 1.0 / PI.sqrt(), epsilon = 1e-15);
        let c = Vec3::new(3.0, -2.0, 0.5);
        let shifted = s.with_center(c);
        assert_relative_eq!(shifted.wavefunction(c).re, 1.0 / PI.sqrt(), epsilon = 1e-15);

        let p = AtomicState::at_origin(2, 1, 0).unwrap();
        let v = p.wavefunction(Vec3::Z);
        let expect = crate::specfun::hydrogenic_radial(2, 1, 1.0).unwrap() * (3.0 / (4.0 * PI)).sqrt();
        assert!(v.re > 0.0);
        assert_relative_eq!(v.re, expect, epsilon = 1e-15);
        assert_eq!(v.im, 0.0);
    }

    #[test]
    fn shift_covariance_is_exact() {
        let c = Vec3::new(0.7, 1.1, -0.4);
        for &(n, l, m) in &[(1, 0, 0), (2, 1, 1), (3, 2, -2)] {
            let a = AtomicState::at_origin(n, l, m).unwrap();
            let b = a.with_center(c);
            for &r in &[Vec3::new(0.2, 0.3, 0.4), Vec3::new(-2.0, 1.0, 5.0)] {
                assert_eq!(b.wavefunction(r + c), a.wavefunction(r + c - c));
            }
        }
    }

    #[test]
    fn parity() {
        for n in 1..=3 {
            for l in 0..n {
                for m in -l..=l {
                    let s = AtomicState::at_origin(n, l, m).unwrap();
                    let r = Vec3::new(0.3, -1.2, 0.8);
                    let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
                    let d = s.wavefunction(-r) - s.wavefunction(r) * sign;
                    assert!(d.norm() <= 1e-15 * s.wavefunction(r).norm().max(1e-300), "{n}{l}{m}");
                }
            }
        }
    }

    #[test]
    fn support_radius_examples() {
        let s = AtomicState::ground();
        let r12 = s.support_radius(1e-12).unwrap();
        // bisection oracle on r² e^{-2r} = 1e-12 · e^{-2}
        let g = |r: f64| r * r * (-2.0 * r).exp() - 1e-12 * (-2.0f64).exp();
        let (mut a, mut b) = (5.0, 40.0);
        for _ in 0..200 {
            let m = 0.5 * (a + b);
            if g(m) > 0.0 {
                a = m
            } else {
                b = m
            }
        }
        assert_relative_eq!(r12, a, epsilon = 1e-9);
        assert!((r12 - 17.69).abs() < 0.01, "{r12}");
        assert_relative_eq!(s.support_radius(1.0).unwrap(), 1.0, epsilon = 1e-6);
        assert!(s.support_radius(1e-14).unwrap() >= r12);
        assert!(s.support_radius(0.0).is_err());
        assert!(s.support_radius(1.5).is_err());
    }

    #[test]
    fn normalization_over_support_box() {
        for n in 1..=3 {
            for l in 0..n {
                for m in -l..=l {
                    let s = AtomicState::at_origin(n, l, m).unwrap();
                    let h = DEFAULT_BOX_SCALE * s.support_radius(DEFAULT_DENSITY_FLOOR).unwrap();
                    let grid = GridSpec::cube(Vec3::ZERO, h).with_nodes(48, 1);
                    let norm = integrate_3d(|r| Complex64::new(s.wavefunction(r).norm_sqr(), 0.0), &grid).unwrap();
                    assert!((norm.value.re - 1.0).abs() < 1e-6, "{n}{l}{m}: {}", norm.value.re);
                }
            }
        }
    }

    #[test]
    fn serde_validates() {
        let ok: AtomicState = serde_json::from_str(r#"{"n":2,"l":1,"m":-1,"center":[1,2,3]}"#).unwrap();
        assert_eq!(ok.center(), Vec3::new(1.0, 2.0, 3.0));
        assert!(serde_json::from_str::<AtomicState>(r#"{"n":1,"l":1,"m":0}"#).is_err());
    }
}
