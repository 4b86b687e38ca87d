//! Special functions: generalized Laguerre polynomials, complex spherical
//! harmonics and hydrogenic radial functions.
//!
//! Everything here is a pure function of its arguments. Normalization
//! prefactors are assembled from log-factorials so that large principal or
//! radial indices do not overflow.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::vec3::Vec3;

/// Index pair of a generalized Laguerre polynomial `L_p^alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolyIndex {
    pub p: u32,
    pub alpha: u32,
}

impl PolyIndex {
    pub fn new(p: u32, alpha: u32) -> Self {
        PolyIndex { p, alpha }
    }
}

/// `ln(n!)`.
pub fn ln_factorial(n: u32) -> f64 {
    (2..=n).map(|k| (k as f64).ln()).sum()
}

/// Generalized Laguerre polynomial `L_p^alpha(x)`, with `L_0 = 1` and
/// `L_1 = 1 + alpha - x`, by upward recurrence in `p`.
pub fn assoc_laguerre(idx: PolyIndex, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::domain(format!("Laguerre argument must be finite, got {x}")));
    }
    Ok(laguerre_unchecked(idx.p, idx.alpha as f64, x))
}

#[inline]
pub(crate) fn laguerre_unchecked(p: u32, alpha: f64, x: f64) -> f64 {
    if p == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..p {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

fn check_lm(l: i32, m: i32) -> Result<()> {
    if l < 0 {
        return Err(Error::domain(format!("L must be non-negative, got {l}")));
    }
    if m.abs() > l {
        return Err(Error::domain(format!("|M| must not exceed L, got L={l}, M={m}")));
    }
    Ok(())
}

/// Orthonormal complex spherical harmonic `Y_LM(theta, phi)` with the
/// Condon-Shortley phase.
pub fn spherical_harmonic(l: i32, m: i32, theta: f64, phi: f64) -> Result<Complex64> {
    check_lm(l, m)?;
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    Ok(ylm_unchecked(l, m, Vec3::new(st * cp, st * sp, ct)))
}

/// `Y_LM` evaluated along the direction of `r` (which need not be a unit
/// vector). The zero vector is treated as pointing along +z.
#[inline]
pub(crate) fn ylm_unchecked(l: i32, m: i32, r: Vec3) -> Complex64 {
    let norm = r.norm();
    let (cos_t, e_plus) = if norm > 0.0 {
        (r.z / norm, Complex64::new(r.x / norm, r.y / norm))
    } else {
        (1.0, Complex64::new(0.0, 0.0))
    };
    let am = m.unsigned_abs() as i32;

    // Normalized associated Legendre values with the sin^m factor stripped;
    // sin^m e^{i m phi} is carried by e_plus^m.
    let mut pmm = (1.0 / (4.0 * PI)).sqrt();
    for i in 1..=am {
        let i = i as f64;
        pmm *= -((2.0 * i + 1.0) / (2.0 * i)).sqrt();
    }
    let plm = if l == am {
        pmm
    } else {
        let mut p_lm2 = pmm;
        let mut p_lm1 = cos_t * (2.0 * am as f64 + 3.0).sqrt() * pmm;
        for ll in (am + 2)..=l {
            let lf = ll as f64;
            let mf = am as f64;
            let a = ((4.0 * lf * lf - 1.0) / (lf * lf - mf * mf)).sqrt();
            let b = (((lf - 1.0).powi(2) - mf * mf) / (4.0 * (lf - 1.0).powi(2) - 1.0)).sqrt();
            let next = a * (cos_t * p_lm1 - b * p_lm2);
            p_lm2 = p_lm1;
            p_lm1 = next;
        }
        p_lm1
    };
    let y = e_plus.powi(am) * plm;
    if m >= 0 {
        y
    } else if am % 2 == 0 {
        y.conj()
    } else {
        -y.conj()
    }
}

fn check_nl(n: i32, l: i32) -> Result<()> {
    if n < 1 {
        return Err(Error::domain(format!("N must be at least 1, got {n}")));
    }
    if l < 0 || l >= n {
        return Err(Error::domain(format!("L must satisfy 0 <= L < N, got N={n}, L={l}")));
    }
    Ok(())
}

/// Hydrogen (Z = 1) radial function `R_NL(r)` with `r` in bohr, normalized so
/// that `∫ R² r² dr = 1`.
pub fn hydrogenic_radial(n: i32, l: i32, r: f64) -> Result<f64> {
    check_nl(n, l)?;
    if !(r >= 0.0) || !r.is_finite() {
        return Err(Error::domain(format!(
            "radius must be finite and non-negative, got {r}"
        )));
    }
    Ok(RadialFn::new(n, l).eval(r))
}

/// Precomputed hydrogenic radial function for repeated evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct RadialFn {
    n: f64,
    l: i32,
    nodes: u32,
    alpha: f64,
    norm: f64,
}

impl RadialFn {
    pub(crate) fn new(n: i32, l: i32) -> Self {
        let nf = n as f64;
        let nodes = (n - l - 1) as u32;
        let ln_norm =
            0.5 * (3.0 * (2.0 / nf).ln() + ln_factorial(nodes) - (2.0 * nf).ln() - ln_factorial((n + l) as u32));
        RadialFn {
            n: nf,
            l,
            nodes,
            alpha: (2 * l + 1) as f64,
            norm: ln_norm.exp(),
        }
    }

    #[inline]
    pub(crate) fn eval(&self, r: f64) -> f64 {
        let rho = 2.0 * r / self.n;
        self.norm * rho.powi(self.l) * (-0.5 * rho).exp() * laguerre_unchecked(self.nodes, self.alpha, rho)
    }
}
