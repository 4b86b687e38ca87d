//! Cross sections, the vortex factor and impact-parameter amplitudes.
//!
//! Cross sections are in units of `r0²` per steradian. Impact-parameter
//! amplitudes follow `a(b) = (1/2πk) ∫ e^{iq·b} f(q) d²q` over the physical
//! disk `|q| ≤ 2k`, and the matching Parseval identity is
//! `∫|a|² d²b = (1/k²) ∫|f|² d²q`.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::beam::BeamParams;
use crate::error::{Error, Result};
use crate::formfactor::{vortex_ff_with, ScatteringGeometry, TransitionDensity, Warning};
use crate::quadrature::{gauss_legendre, CompensatedSum, GridSpec};
use crate::vec3::Vec3;

/// Classical electron radius in metres.
pub const R0: f64 = 2.818e-15;

/// Default floor on `|M_p|` below which the vortex factor is refused.
pub const DEFAULT_MP_FLOOR: f64 = 1e-300;

/// Minimum samples per oscillation of `e^{iq·b}` for the 2D transform.
pub const SAMPLES_PER_OSCILLATION: f64 = 6.0;

const UNIT_TOL: f64 = 1e-12;

/// Incoming and outgoing photon polarization directions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolarizationPair {
    pub lambda_i: Vec3,
    pub lambda_f: Vec3,
}

impl PolarizationPair {
    pub fn new(lambda_i: Vec3, lambda_f: Vec3) -> Result<Self> {
        let p = PolarizationPair { lambda_i, lambda_f };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("lambda_i", self.lambda_i), ("lambda_f", self.lambda_f)] {
            if !v.is_finite() || (v.norm() - 1.0).abs() > UNIT_TOL {
                return Err(Error::domain(format!(
                    "{name} must be a unit vector, |{name}| = {}",
                    v.norm()
                )));
            }
        }
        Ok(())
    }

    /// `Λ_f` taken as the normalized projection of `Λ_i` onto the plane
    /// transverse to the outgoing direction. When `Λ_i` lies along `k̂_f`
    /// the projection vanishes and any transverse unit vector is returned.
    pub fn projected(lambda_i: Vec3, geom: &ScatteringGeometry) -> Result<Self> {
        let kf = geom.k_f_hat();
        let proj = lambda_i - kf * lambda_i.dot(kf);
        let n = proj.norm();
        let lambda_f = if n > 1e-14 {
            proj * (1.0 / n)
        } else {
            let seed = if kf.x.abs() < 0.9 { Vec3::X } else { Vec3::Y };
            let t = seed - kf * seed.dot(kf);
            t * (1.0 / t.norm())
        };
        Self::new(lambda_i, lambda_f)
    }
}

/// `(ω_f/ω_i) |Λ_i·Λ_f|²` in units of `r0²/sr`.
pub fn thomson_dcs(pol: &PolarizationPair, omega_i: f64, omega_f: f64) -> Result<f64> {
    pol.validate()?;
    if !(omega_i > 0.0 && omega_f > 0.0) {
        return Err(Error::domain(format!(
            "photon energies must be positive, got {omega_i}, {omega_f}"
        )));
    }
    let d = pol.lambda_i.dot(pol.lambda_f);
    Ok(omega_f / omega_i * d * d)
}

/// `|M|²` times the Thomson cross section.
pub fn compton_dcs(m: Complex64, thomson: f64) -> f64 {
    m.norm_sqr() * thomson
}

/// `T_v = |M_v|²/|M_p|² - 1`.
pub fn vortex_factor(m_v: Complex64, m_p: Complex64) -> Result<f64> {
    vortex_factor_with_floor(m_v, m_p, DEFAULT_MP_FLOOR)
}

pub fn vortex_factor_with_floor(m_v: Complex64, m_p: Complex64, floor: f64) -> Result<f64> {
    let den = m_p.norm();
    if !(den >= floor) || den == 0.0 {
        return Err(Error::DegenerateDenominator { value: den, floor });
    }
    // ratio first so that tiny but representable moduli do not underflow
    Ok((m_v / m_p).norm_sqr() - 1.0)
}

/// Polar tensor grid `ρ-nodes × φ-nodes` on a disk, samples stored
/// radius-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolarSamples {
    pub radius: f64,
    pub radial_nodes: Vec<f64>,
    /// Gauss-Legendre weights including the `ρ` Jacobian.
    pub radial_weights: Vec<f64>,
    pub n_phi: usize,
    pub values: Vec<Complex64>,
}

impl PolarSamples {
    fn layout(radius: f64, n_rho: usize, n_phi: usize) -> Result<(Vec<f64>, Vec<f64>)> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::domain(format!("disk radius must be positive, got {radius}")));
        }
        if n_rho == 0 || n_phi == 0 {
            return Err(Error::domain("polar grid needs at least one node per direction"));
        }
        let (x, w) = gauss_legendre(n_rho);
        let h = 0.5 * radius;
        let nodes: Vec<f64> = x.iter().map(|t| h * (t + 1.0)).collect();
        let weights = nodes.iter().zip(&w).map(|(r, w)| h * w * r).collect();
        Ok((nodes, weights))
    }

    fn build<F>(radius: f64, n_rho: usize, n_phi: usize, f: F) -> Result<Self>
    where
        F: Fn([f64; 2]) -> Result<Complex64> + Sync,
    {
        Self::build_indexed(radius, n_rho, n_phi, |_, _, p| f(p))
    }

    /// Like `build`, with the ring and azimuth indices passed along.
    fn build_indexed<F>(radius: f64, n_rho: usize, n_phi: usize, f: F) -> Result<Self>
    where
        F: Fn(usize, usize, [f64; 2]) -> Result<Complex64> + Sync,
    {
        let (radial_nodes, radial_weights) = Self::layout(radius, n_rho, n_phi)?;
        let points: Vec<(usize, usize, [f64; 2])> = radial_nodes
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| (0..n_phi).map(move |j| (i, j, polar_point(r, j, n_phi))))
            .collect();
        let values = points
            .par_iter()
            .map(|&(i, j, p)| f(i, j, p))
            .collect::<Result<Vec<_>>>()?;
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            let p = points[i].2;
            return Err(Error::Evaluation {
                point: Vec3::new(p[0], p[1], 0.0),
            });
        }
        Ok(PolarSamples {
            radius,
            radial_nodes,
            radial_weights,
            n_phi,
            values,
        })
    }

    pub fn phi_weight(&self) -> f64 {
        2.0 * PI / self.n_phi as f64
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `(point, weight, value)` radius-major.
    pub fn samples(&self) -> impl Iterator<Item = ([f64; 2], f64, Complex64)> + '_ {
        let dphi = self.phi_weight();
        self.radial_nodes
            .iter()
            .zip(&self.radial_weights)
            .enumerate()
            .flat_map(move |(i, (&r, &w))| {
                (0..self.n_phi).map(move |j| (polar_point(r, j, self.n_phi), w * dphi, self.values[i * self.n_phi + j]))
            })
    }

    fn integral_abs2(&self) -> f64 {
        let mut acc = CompensatedSum::new();
        for (_, w, v) in self.samples() {
            acc.add(Complex64::new(w * v.norm_sqr(), 0.0));
        }
        acc.total().re
    }

    fn max_radial_spacing(&self) -> f64 {
        let mut edges = vec![0.0];
        edges.extend(&self.radial_nodes);
        edges.push(self.radius);
        edges.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max)
    }
}

fn polar_point(r: f64, j: usize, n_phi: usize) -> [f64; 2] {
    let phi = 2.0 * PI * j as f64 / n_phi as f64;
    let (s, c) = phi.sin_cos();
    [r * c, r * s]
}

/// Scattering amplitude `f(q)` sampled on the disk `|q| ≤ q_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QProfile {
    pub k: f64,
    pub grid: PolarSamples,
}

/// Impact-parameter amplitude `a(b)` sampled on a disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BProfile {
    pub k: f64,
    pub grid: PolarSamples,
}

impl QProfile {
    /// Samples `f` on `|q| ≤ q_max` with `n_rho × n_phi` nodes.
    pub fn from_fn<F>(k: f64, q_max: f64, n_rho: usize, n_phi: usize, f: F) -> Result<Self>
    where
        F: Fn([f64; 2]) -> Result<Complex64> + Sync,
    {
        if !(k > 0.0 && k.is_finite()) {
            return Err(Error::domain(format!("wavenumber must be positive, got {k}")));
        }
        Ok(QProfile {
            k,
            grid: PolarSamples::build(q_max, n_rho, n_phi, f)?,
        })
    }

    /// Isotropic `f(q) = e^{-q²σ²/2}` over the physical disk `|q| ≤ 2k`.
    pub fn gaussian(k: f64, sigma: f64, n_rho: usize, n_phi: usize) -> Result<Self> {
        Self::from_fn(k, 2.0 * k, n_rho, n_phi, |q| {
            Ok(Complex64::new(
                (-(q[0] * q[0] + q[1] * q[1]) * sigma * sigma / 2.0).exp(),
                0.0,
            ))
        })
    }

    /// Photon-atom amplitude `M_v(q) × √(ω_f/ω_i) Λ_i·Λ_f` for elastic
    /// scattering of `beam_in` into `beam_out`, in units of `r0`. The
    /// warnings are those of the form factor at the disk edge, where the
    /// integrand oscillates fastest.
    pub fn vortex<T: TransitionDensity + ?Sized>(
        target: &T,
        beam_in: &BeamParams,
        beam_out: &BeamParams,
        lambda_i: Vec3,
        grid: &GridSpec,
        n_rho: usize,
        n_phi: usize,
    ) -> Result<(Self, Vec<Warning>)> {
        let k = beam_in.k();
        if beam_out.wavelength() != beam_in.wavelength() {
            return Err(Error::domain("q-profiles are built for elastic scattering only"));
        }
        let amplitude = |qm: f64, azimuth: f64| -> Result<(Complex64, Vec<Warning>)> {
            let geom = ScatteringGeometry::from_momentum_transfer(k, qm.min(2.0 * k), azimuth)?;
            let pol = PolarizationPair::projected(lambda_i, &geom)?;
            // elastic: √(ω_f/ω_i) = 1
            let amp = pol.lambda_i.dot(pol.lambda_f);
            let m = vortex_ff_with(target, beam_in, beam_out, &geom, grid)?;
            Ok((m.value * amp, m.warnings))
        };
        let (_, warnings) = amplitude(2.0 * k, 0.0)?;
        let profile = match target.azimuthal_charge() {
            // on-axis targets: M_v(φ + α) = e^{iΔα} M_v(φ), one integral per ring
            Some(m) => {
                let delta = (m + beam_in.ell() - beam_out.ell()) as f64;
                let (nodes, _) = PolarSamples::layout(2.0 * k, n_rho, n_phi)?;
                let ring = nodes
                    .par_iter()
                    .map(|&qm| {
                        vortex_ff_with(
                            target,
                            beam_in,
                            beam_out,
                            &ScatteringGeometry::from_momentum_transfer(k, qm, 0.0)?,
                            grid,
                        )
                    })
                    .collect::<Result<Vec<_>>>()?;
                let grid = PolarSamples::build_indexed(2.0 * k, n_rho, n_phi, |i, j, _| {
                    let phi = 2.0 * PI * j as f64 / n_phi as f64;
                    let geom = ScatteringGeometry::from_momentum_transfer(k, nodes[i], phi)?;
                    let pol = PolarizationPair::projected(lambda_i, &geom)?;
                    Ok(ring[i].value * Complex64::from_polar(pol.lambda_i.dot(pol.lambda_f), delta * phi))
                })?;
                QProfile { k, grid }
            }
            None => Self::from_fn(k, 2.0 * k, n_rho, n_phi, |q| {
                Ok(amplitude(q[0].hypot(q[1]), q[1].atan2(q[0]))?.0)
            })?,
        };
        Ok((profile, warnings))
    }

    pub fn q_max(&self) -> f64 {
        self.grid.radius
    }

    /// Largest `|b|` at which `e^{iq·b}` is still sampled
    /// [`SAMPLES_PER_OSCILLATION`] times per period.
    pub fn resolved_radius(&self) -> f64 {
        let step = 2.0 * PI / SAMPLES_PER_OSCILLATION;
        let radial = step / self.grid.max_radial_spacing();
        let angular = step / (self.q_max() * self.grid.phi_weight());
        radial.min(angular)
    }

    /// `(1/k²) ∫|f|² d²q`.
    pub fn sigma(&self) -> f64 {
        self.grid.integral_abs2() / (self.k * self.k)
    }

    /// Node counts `(n_rho, n_phi)` that resolve `e^{iq·b}` out to `b_max`.
    pub fn resolution_for(q_max: f64, b_max: f64) -> (usize, usize) {
        let step = 2.0 * PI / SAMPLES_PER_OSCILLATION;
        // largest Gauss-Legendre gap is at most about π/(2n) of the interval
        let n_rho = ((PI / 2.0) * q_max * b_max / step).ceil().max(8.0) as usize;
        let n_phi = (2.0 * PI * q_max * b_max / step).ceil().max(8.0) as usize;
        (n_rho, n_phi)
    }
}

/// The 2D transform is undersampled at the requested impact parameter.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SamplingWarning {
    pub b: f64,
    pub radial_phase_step: f64,
    pub angular_phase_step: f64,
    pub max_phase_step: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Amplitude {
    pub value: Complex64,
    pub warning: Option<SamplingWarning>,
}

fn sampling_check(fq: &QProfile, b: f64) -> Option<SamplingWarning> {
    let max_step = 2.0 * PI / SAMPLES_PER_OSCILLATION;
    let radial = fq.grid.max_radial_spacing() * b;
    let angular = fq.q_max() * b * fq.grid.phi_weight();
    (radial > max_step || angular > max_step).then_some(SamplingWarning {
        b,
        radial_phase_step: radial,
        angular_phase_step: angular,
        max_phase_step: max_step,
    })
}

fn transform(fq: &QProfile, b: [f64; 2]) -> Complex64 {
    let mut acc = CompensatedSum::new();
    for (q, w, f) in fq.grid.samples() {
        acc.add(f * Complex64::from_polar(w, q[0] * b[0] + q[1] * b[1]));
    }
    acc.total() / (2.0 * PI * fq.k)
}

/// `a(b) = (1/2πk) ∫ e^{iq·b} f(q) d²q` over the sampled disk.
pub fn impact_amplitude(fq: &QProfile, b: [f64; 2]) -> Result<Amplitude> {
    if fq.grid.is_empty() {
        return Err(Error::domain("empty q-profile"));
    }
    if !(b[0].is_finite() && b[1].is_finite()) {
        return Err(Error::domain("impact parameter must be finite"));
    }
    Ok(Amplitude {
        value: transform(fq, b),
        warning: sampling_check(fq, b[0].hypot(b[1])),
    })
}

/// Stops the outward march once `|a|` drops below this fraction of its
/// running maximum.
pub const B_EXTENT_FRACTION: f64 = 1e-4;
/// Boundary `|a|²` above this fraction of the peak is a coverage error.
pub const B_COVERAGE_FRACTION: f64 = 1e-6;

/// Settings for [`adaptive_b_profile`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BGridOptions {
    /// Outermost radius the march may reach.
    pub b_limit: f64,
    /// Ring spacing of the march.
    pub b_step: f64,
}

impl BGridOptions {
    /// March out to the largest radius the q-grid resolves.
    pub fn for_profile(fq: &QProfile) -> Self {
        BGridOptions {
            b_limit: fq.resolved_radius(),
            b_step: PI / (2.0 * fq.q_max()),
        }
    }
}

/// Result of [`adaptive_b_profile`].
#[derive(Debug, Clone, PartialEq)]
pub struct BProfileResult {
    pub profile: BProfile,
    pub warnings: Vec<SamplingWarning>,
}

/// `a(b)` on a ring of radius `b` carries angular harmonics up to about
/// `q_max b`.
fn angular_nodes(fq: &QProfile, b: f64) -> usize {
    2 * ((fq.q_max() * b).ceil() as usize + 16) + 1
}

fn ring_max(fq: &QProfile, b: f64, n_phi: usize) -> f64 {
    (0..n_phi)
        .into_par_iter()
        .map(|j| transform(fq, polar_point(b, j, n_phi)).norm())
        .collect::<Vec<_>>()
        .into_iter()
        .fold(0.0, f64::max)
}

/// Polar b-grid extending to the first ring where `|a|` falls below
/// [`B_EXTENT_FRACTION`] of its maximum.
pub fn adaptive_b_profile(fq: &QProfile, opts: BGridOptions) -> Result<BProfileResult> {
    if fq.grid.is_empty() {
        return Err(Error::domain("empty q-profile"));
    }
    if !(opts.b_step > 0.0) {
        return Err(Error::domain(format!("b step must be positive, got {}", opts.b_step)));
    }
    if !(opts.b_limit > opts.b_step) {
        return Err(Error::domain(format!(
            "q-profile resolves b only up to {:.3}, less than one step {:.3}; use more q nodes",
            opts.b_limit, opts.b_step
        )));
    }
    let mut peak = transform(fq, [0.0, 0.0]).norm();
    let mut b_max = opts.b_limit;
    let mut b = opts.b_step;
    while b < opts.b_limit {
        let m = ring_max(fq, b, angular_nodes(fq, b));
        peak = peak.max(m);
        if m <= B_EXTENT_FRACTION * peak {
            b_max = b;
            break;
        }
        b += opts.b_step;
    }
    if peak == 0.0 {
        b_max = opts.b_step;
    }

    let n_rho = {
        let n = ((1.5 * fq.q_max() * b_max).ceil() as usize + 16).max(32);
        n + n % 2
    };
    let grid = PolarSamples::build(b_max, n_rho, angular_nodes(fq, b_max), |p| Ok(transform(fq, p)))?;
    let warnings = sampling_check(fq, b_max).into_iter().collect();
    Ok(BProfileResult {
        profile: BProfile { k: fq.k, grid },
        warnings,
    })
}

/// Both sides of the Parseval identity and diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParsevalReport {
    pub sigma_q: f64,
    pub sigma_b: f64,
    pub rel_diff: f64,
    /// Largest `|a|²` on the b-grid.
    pub max_abs_a2: f64,
    /// `max |a|² > 1`: first-order theory is not trustworthy here.
    pub probability_bound_exceeded: bool,
}

/// Compares `∫|a|² d²b` with `(1/k²) ∫|f|² d²q`.
pub fn parseval_check(fq: &QProfile, ab: &BProfile) -> Result<ParsevalReport> {
    if fq.grid.is_empty() || ab.grid.is_empty() {
        return Err(Error::domain("empty profile"));
    }
    if fq.k != ab.k {
        return Err(Error::domain("q- and b-profiles carry different wavenumbers"));
    }
    let g = &ab.grid;
    let max_abs_a2 = g.values.iter().map(|v| v.norm_sqr()).fold(0.0, f64::max);
    let outer = &g.values[g.values.len() - g.n_phi..];
    let boundary = outer.iter().map(|v| v.norm_sqr()).fold(0.0, f64::max);
    if boundary > B_COVERAGE_FRACTION * max_abs_a2 {
        return Err(Error::Coverage(format!(
            "b-grid truncated at {:.4} bohr: boundary |a|² = {boundary:e} exceeds {B_COVERAGE_FRACTION:e} of the peak {max_abs_a2:e}",
            g.radius
        )));
    }
    let sigma_q = fq.sigma();
    let sigma_b = g.integral_abs2();
    let scale = sigma_q.abs().max(sigma_b.abs());
    let rel_diff = if scale == 0.0 {
        0.0
    } else {
        (sigma_b - sigma_q).abs() / scale
    };
    Ok(ParsevalReport {
        sigma_q,
        sigma_b,
        rel_diff,
        max_abs_a2,
        probability_bound_exceeded: max_abs_a2 > 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn thomson_examples() {
        let par = PolarizationPair::new(Vec3::X, Vec3::X).unwrap();
        assert_eq!(thomson_dcs(&par, 1.0, 1.0).unwrap(), 1.0);
        let orth = PolarizationPair::new(Vec3::X, Vec3::Y).unwrap();
        assert_eq!(thomson_dcs(&orth, 1.0, 1.0).unwrap(), 0.0);
        assert_eq!(thomson_dcs(&par, 2.0, 1.0).unwrap(), 0.5);
        assert!(thomson_dcs(&par, 0.0, 1.0).is_err());
        let bad = PolarizationPair {
            lambda_i: Vec3::new(1.0, 1e-5, 0.0),
            lambda_f: Vec3::X,
        };
        assert!(thomson_dcs(&bad, 1.0, 1.0).is_err());
        assert!(PolarizationPair::new(Vec3::ZERO, Vec3::X).is_err());
    }

    #[test]
    fn projected_polarization_gives_dipole_pattern() {
        for &t in &[0.0, 0.4, 1.2, 2.9] {
            for &az in &[0.0, 0.7, PI / 2.0] {
                let g = ScatteringGeometry::with_azimuth(1.0, 1.0, t, az).unwrap();
                let pol = PolarizationPair::projected(Vec3::X, &g).unwrap();
                assert!(pol.lambda_f.dot(g.k_f_hat()).abs() < 1e-14);
                let d = Vec3::X.dot(g.k_f_hat());
                assert_relative_eq!(thomson_dcs(&pol, 1.0, 1.0).unwrap(), 1.0 - d * d, epsilon = 1e-14);
            }
        }
        // polarization along the outgoing direction: no scattering
        let g = ScatteringGeometry::with_azimuth(1.0, 1.0, PI / 2.0, PI).unwrap();
        let pol = PolarizationPair::projected(Vec3::X, &g).unwrap();
        assert!(thomson_dcs(&pol, 1.0, 1.0).unwrap() < 1e-28);
    }

    #[test]
    fn compton_examples() {
        assert_eq!(compton_dcs(Complex64::new(1.0, 0.0), 0.7), 0.7);
        assert_eq!(compton_dcs(Complex64::new(0.0, 0.0), 0.7), 0.0);
        let m = Complex64::from_polar(0.8, PI / 3.0);
        assert_relative_eq!(compton_dcs(m, 1.0), 0.64, epsilon = 1e-15);
    }

    #[test]
    fn vortex_factor_examples() {
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(vortex_factor(one, one).unwrap(), 0.0);
        let v = vortex_factor(Complex64::new(2f64.sqrt(), 0.0), one).unwrap();
        assert_relative_eq!(v, 1.0, epsilon = 1e-15);
        let e = vortex_factor(one, Complex64::new(0.0, 0.0)).unwrap_err();
        assert!(matches!(e, Error::DegenerateDenominator { .. }));
        assert_eq!(e.exit_code(), 3);
        assert!(vortex_factor_with_floor(one, Complex64::new(1e-10, 0.0), 1e-8).is_err());
        assert!(vortex_factor(Complex64::new(1e-200, 0.0), Complex64::new(1e-200, 0.0)).is_ok());
    }

    proptest! {
        #[test]
        fn vortex_factor_rescaling_invariant(
            a in -3.0f64..3.0, b in -3.0f64..3.0, c in 0.1f64..3.0, d in -3.0f64..3.0,
            s in 1e-3f64..1e3, ph in -PI..PI,
        ) {
            let mv = Complex64::new(a, b);
            let mp = Complex64::new(c, d);
            let z = Complex64::from_polar(s, ph);
            let t0 = vortex_factor(mv, mp).unwrap();
            let t1 = vortex_factor(mv * z, mp * z).unwrap();
            prop_assert!((t0 - t1).abs() <= 1e-12 * (1.0 + t0.abs()));
        }

        #[test]
        fn compton_global_phase_invariant(a in -3.0f64..3.0, b in -3.0f64..3.0, ph in -PI..PI, t in 0.0f64..5.0) {
            let m = Complex64::new(a, b);
            let r = compton_dcs(m * Complex64::from_polar(1.0, ph), t);
            prop_assert!((r - compton_dcs(m, t)).abs() <= 1e-12 * (1.0 + r));
        }
    }

    #[test]
    fn constant_disk_at_origin() {
        let (k, c, qmax) = (3.0, Complex64::new(0.5, -0.2), 1e-3);
        let fq = QProfile::from_fn(k, qmax, 8, 16, |_| Ok(c)).unwrap();
        let a = impact_amplitude(&fq, [1e-3, 0.0]).unwrap();
        let expect = c * (PI * qmax * qmax) / (2.0 * PI * k);
        assert!((a.value - expect).norm() < 1e-6 * expect.norm());
        assert!(a.warning.is_none());
    }

    /// Closed-form pair `e^{-q²σ²/2}` ↔ `(1/kσ²) e^{-b²/2σ²}`.
    fn gaussian_a(k: f64, sigma: f64, b: f64) -> f64 {
        (-(b * b) / (2.0 * sigma * sigma)).exp() / (k * sigma * sigma)
    }

    #[test]
    fn gaussian_transform_matches_closed_form() {
        let (k, sigma) = (1.0, 4.0);
        let fq = QProfile::gaussian(k, sigma, 64, 128).unwrap();
        for &b in &[0.0, 1.0, 3.0, 6.0, 10.0] {
            for &phi in &[0.0, 1.1] {
                let a = impact_amplitude(&fq, [b * f64::cos(phi), b * f64::sin(phi)]).unwrap();
                let exact = gaussian_a(k, sigma, b);
                assert!((a.value.re - exact).abs() < 1e-10 * gaussian_a(k, sigma, 0.0), "b={b}");
                assert!(a.value.im.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn shift_theorem_translates_profile() {
        let (k, sigma) = (1.0, 3.0);
        let b0 = [2.0, -1.0];
        let base = QProfile::gaussian(k, sigma, 48, 96).unwrap();
        let shifted = QProfile::from_fn(k, 2.0 * k, 48, 96, |q| {
            let g = (-(q[0] * q[0] + q[1] * q[1]) * sigma * sigma / 2.0).exp();
            Ok(Complex64::from_polar(g, -(q[0] * b0[0] + q[1] * b0[1])))
        })
        .unwrap();
        for &b in &[[0.0, 0.0], [1.0, 2.0], [-3.0, 0.5]] {
            let a0 = impact_amplitude(&base, b).unwrap().value.norm_sqr();
            let a1 = impact_amplitude(&shifted, [b[0] + b0[0], b[1] + b0[1]])
                .unwrap()
                .value
                .norm_sqr();
            assert!((a0 - a1).abs() < 1e-10 * a0.max(1e-3));
        }
    }

    #[test]
    fn impact_amplitude_is_linear() {
        let f1 = |q: [f64; 2]| Complex64::new((-q[0] * q[0]).exp(), q[1]);
        let f2 = |q: [f64; 2]| Complex64::new(q[0] * q[1], (-q[1].abs()).exp());
        let (alpha, beta) = (Complex64::new(0.3, -1.2), Complex64::new(-2.0, 0.4));
        let p1 = QProfile::from_fn(1.5, 3.0, 16, 32, |q| Ok(f1(q))).unwrap();
        let p2 = QProfile::from_fn(1.5, 3.0, 16, 32, |q| Ok(f2(q))).unwrap();
        let pc = QProfile::from_fn(1.5, 3.0, 16, 32, |q| Ok(alpha * f1(q) + beta * f2(q))).unwrap();
        for &b in &[[0.0, 0.0], [0.4, -0.3], [1.0, 1.0]] {
            let lhs = impact_amplitude(&pc, b).unwrap().value;
            let rhs = alpha * impact_amplitude(&p1, b).unwrap().value + beta * impact_amplitude(&p2, b).unwrap().value;
            assert!((lhs - rhs).norm() < 1e-12 * (1.0 + lhs.norm()));
        }
    }

    #[test]
    fn undersampling_is_flagged() {
        let fq = QProfile::gaussian(1.0, 4.0, 8, 8).unwrap();
        let a = impact_amplitude(&fq, [30.0, 0.0]).unwrap();
        let w = a.warning.unwrap();
        assert!(w.angular_phase_step > w.max_phase_step);
        assert!(impact_amplitude(&fq, [0.01, 0.0]).unwrap().warning.is_none());
    }

    #[test]
    fn resolution_helper_silences_guard() {
        let (n_rho, n_phi) = QProfile::resolution_for(2.0, 18.0);
        let fq = QProfile::gaussian(1.0, 4.0, n_rho, n_phi).unwrap();
        assert!(impact_amplitude(&fq, [18.0, 0.0]).unwrap().warning.is_none());
    }

    #[test]
    fn empty_and_invalid_inputs() {
        let fq = QProfile {
            k: 1.0,
            grid: PolarSamples {
                radius: 1.0,
                radial_nodes: vec![],
                radial_weights: vec![],
                n_phi: 4,
                values: vec![],
            },
        };
        assert!(impact_amplitude(&fq, [0.0, 0.0]).is_err());
        assert!(QProfile::gaussian(0.0, 1.0, 8, 8).is_err());
        assert!(QProfile::from_fn(1.0, 1.0, 4, 4, |_| Ok(Complex64::new(f64::NAN, 0.0))).is_err());
    }

    #[test]
    fn gaussian_parseval() {
        let (k, sigma) = (1.0, 4.0);
        let (n_rho, n_phi) = QProfile::resolution_for(2.0 * k, 20.0);
        let fq = QProfile::gaussian(k, sigma, n_rho, n_phi).unwrap();
        let exact = PI / (k * k * sigma * sigma);
        assert_relative_eq!(fq.sigma(), exact, max_relative = 1e-12);
        let ab = adaptive_b_profile(&fq, BGridOptions::for_profile(&fq)).unwrap();
        assert!(ab.warnings.is_empty(), "{:?}", ab.warnings);
        let r = parseval_check(&fq, &ab.profile).unwrap();
        assert!(r.rel_diff <= 1e-4, "{r:?}");
        assert!(!r.probability_bound_exceeded);
        assert_relative_eq!(r.max_abs_a2, gaussian_a(k, sigma, 0.0).powi(2), max_relative = 1e-4);
    }

    #[test]
    fn zero_profile_parseval() {
        let coarse = QProfile::from_fn(1.0, 2.0, 8, 8, |_| Ok(Complex64::new(0.0, 0.0))).unwrap();
        let err = adaptive_b_profile(&coarse, BGridOptions::for_profile(&coarse)).unwrap_err();
        assert!(err.to_string().contains("more q nodes"), "{err}");
        let fq = QProfile::from_fn(1.0, 2.0, 32, 64, |_| Ok(Complex64::new(0.0, 0.0))).unwrap();
        let ab = adaptive_b_profile(&fq, BGridOptions::for_profile(&fq)).unwrap();
        let r = parseval_check(&fq, &ab.profile).unwrap();
        assert_eq!((r.sigma_q, r.sigma_b, r.rel_diff), (0.0, 0.0, 0.0));
    }

    #[test]
    fn truncated_b_grid_is_refused() {
        let fq = QProfile::gaussian(1.0, 4.0, 32, 64).unwrap();
        let ab = BProfile {
            k: 1.0,
            grid: PolarSamples::build(4.0, 16, 129, |p| Ok(transform(&fq, p))).unwrap(),
        };
        let e = parseval_check(&fq, &ab).unwrap_err();
        assert!(matches!(e, Error::Coverage(_)));
    }

    #[test]
    fn b_profile_points_are_ordered_and_deterministic() {
        let fq = QProfile::gaussian(1.0, 2.0, 16, 32).unwrap();
        let a = adaptive_b_profile(&fq, BGridOptions::for_profile(&fq)).unwrap();
        let b = rayon::ThreadPoolBuilder::new()
            .num_threads(3)
            .build()
            .unwrap()
            .install(|| adaptive_b_profile(&fq, BGridOptions::for_profile(&fq)).unwrap());
        assert_eq!(a.profile, b.profile);
    }
}
