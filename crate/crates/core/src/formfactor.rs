//! Plane-wave and vortex atomic form factors.
//!
//! The plane-wave form factor is `M = ∫ φ_f* e^{iq·r} φ_i d³r`. The vortex
//! form factor dresses the same matrix element with the incoming mode
//! `u_i(r)` and the conjugated outgoing mode `u_f*(r')`, where `r'` is `r`
//! expressed in the frame whose `ẑ'` axis is `k̂_f`, and multiplies by
//! `½ λ z_R` of the incoming beam so that `M_v → M` for wide `ℓ = p = 0` beams.
//!
//! Frame convention: the incoming beam travels along `ẑ`. With the default
//! azimuth the scattering plane is the y-z plane, `k̂_f = (0, -sinΘ, cosΘ)`
//! and the transverse momentum transfer points along `+ŷ`. The outgoing frame
//! is obtained by a rotation about the common x axis. For other azimuths the
//! whole construction is rotated about `ẑ`, so the outgoing frame tends to
//! the lab frame as `Θ → 0`.

use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::atom::{AtomicState, DEFAULT_BOX_SCALE, DEFAULT_DENSITY_FLOOR};
use crate::beam::BeamParams;
use crate::error::{Error, Result};
use crate::quadrature::{integrate_3d_guarded, GridSpec, QuadWarning};
use crate::vec3::Vec3;

/// Rotates `r` by `-theta` about the x axis: the coordinates of `r` in the
/// frame whose `ẑ'` lies along the outgoing wavevector.
pub fn rotate_to_scattered_frame(r: Vec3, theta: f64) -> Vec3 {
    let (s, c) = theta.sin_cos();
    Vec3::new(r.x, c * r.y + s * r.z, -s * r.y + c * r.z)
}

fn rotate_about_z(r: Vec3, angle: f64) -> Vec3 {
    let (s, c) = angle.sin_cos();
    Vec3::new(c * r.x - s * r.y, s * r.x + c * r.y, r.z)
}

/// Incoming and outgoing wavevectors of one scattering event.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScatteringGeometry {
    /// Incoming wavenumber (1/bohr), along `ẑ`.
    pub k_i: f64,
    /// Outgoing wavenumber (1/bohr).
    pub k_f: f64,
    /// Scattering angle between `k̂_i` and `k̂_f`, radians.
    pub theta: f64,
    /// Azimuth of the transverse momentum transfer, radians. The default
    /// `π/2` puts the scattering plane in y-z.
    #[serde(default = "default_azimuth")]
    pub azimuth: f64,
}

fn default_azimuth() -> f64 {
    FRAC_PI_2
}

impl ScatteringGeometry {
    pub fn new(k_i: f64, k_f: f64, theta: f64) -> Result<Self> {
        Self::with_azimuth(k_i, k_f, theta, FRAC_PI_2)
    }

    pub fn elastic(k: f64, theta: f64) -> Result<Self> {
        Self::new(k, k, theta)
    }

    pub fn with_azimuth(k_i: f64, k_f: f64, theta: f64, azimuth: f64) -> Result<Self> {
        if !(k_i > 0.0 && k_f > 0.0) || !k_i.is_finite() || !k_f.is_finite() {
            return Err(Error::domain(format!("wavenumbers must be positive, got {k_i}, {k_f}")));
        }
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::domain(format!(
                "scattering angle must lie in [0, π], got {theta}"
            )));
        }
        if !azimuth.is_finite() {
            return Err(Error::domain("azimuth must be finite"));
        }
        Ok(ScatteringGeometry {
            k_i,
            k_f,
            theta,
            azimuth,
        })
    }

    /// Geometry whose wavenumbers match the two beams.
    pub fn for_beams(beam_in: &BeamParams, beam_out: &BeamParams, theta: f64) -> Result<Self> {
        Self::new(beam_in.k(), beam_out.k(), theta)
    }

    /// Elastic geometry with `|q| = 2k sin(Θ/2) = q_mag`.
    pub fn from_momentum_transfer(k: f64, q_mag: f64, azimuth: f64) -> Result<Self> {
        if !(0.0..=2.0 * k).contains(&q_mag) {
            return Err(Error::domain(format!(
                "momentum transfer {q_mag} outside [0, 2k] for k = {k}"
            )));
        }
        let theta = 2.0 * (q_mag / (2.0 * k)).min(1.0).asin();
        Self::with_azimuth(k, k, theta, azimuth)
    }

    /// Unit vector along the outgoing wavevector.
    pub fn k_f_hat(&self) -> Vec3 {
        let (s, c) = self.theta.sin_cos();
        // transverse part of k_f points opposite to that of q
        let (sa, ca) = self.azimuth.sin_cos();
        Vec3::new(-s * ca, -s * sa, c)
    }

    /// `q = k_i ẑ - k_f k̂_f`.
    pub fn q(&self) -> Vec3 {
        Vec3::Z * self.k_i - self.k_f_hat() * self.k_f
    }

    /// Coordinates of `r` in the outgoing beam frame, reached from the lab
    /// frame by the rotation about `ẑ × k̂_f` that carries `ẑ` onto `k̂_f`.
    #[inline]
    pub fn to_scattered_frame(&self, r: Vec3) -> Vec3 {
        if self.azimuth == FRAC_PI_2 {
            return rotate_to_scattered_frame(r, self.theta);
        }
        let beta = self.azimuth - FRAC_PI_2;
        rotate_about_z(rotate_to_scattered_frame(rotate_about_z(r, -beta), self.theta), beta)
    }
}

/// Integrand diagnostics surfaced alongside a form factor.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Warning {
    Quadrature(QuadWarning),
    /// A beam's divergence angle is at or beyond the paraxial limit.
    Paraxial {
        beam: String,
        divergence_deg: f64,
    },
    /// Incoming and outgoing beams differ in `λ` or `z_R`; the `½ λ z_R`
    /// prefactor used the incoming beam.
    PrefactorFromIncomingBeam,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FormFactorResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub grid: GridSpec,
    pub warnings: Vec<Warning>,
}

/// Product `φ_f*(r) φ_i(r)` of a target transition, with its spatial extent.
pub trait TransitionDensity: Sync {
    fn density(&self, r: Vec3) -> Complex64;

    /// Box `[lo, hi]` the quadrature grid must cover.
    fn support_box(&self) -> Result<(Vec3, Vec3)>;

    /// A grid that covers the support with margin.
    fn default_grid(&self) -> Result<GridSpec>;

    /// `Some(m)` when rotating the density by `α` about `ẑ` multiplies it by
    /// `e^{imα}`.
    fn azimuthal_charge(&self) -> Option<i32> {
        None
    }
}

/// Transition between two hydrogenic states.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Transition {
    pub initial: AtomicState,
    pub final_: AtomicState,
    pub density_floor: f64,
    pub box_scale: f64,
}

impl Transition {
    pub fn new(initial: AtomicState, final_: AtomicState) -> Self {
        Transition {
            initial,
            final_,
            density_floor: DEFAULT_DENSITY_FLOOR,
            box_scale: DEFAULT_BOX_SCALE,
        }
    }

    pub fn with_density_floor(mut self, floor: f64) -> Self {
        self.density_floor = floor;
        self
    }

    pub fn with_box_scale(mut self, scale: f64) -> Self {
        self.box_scale = scale;
        self
    }

    fn supports(&self) -> Result<[(Vec3, f64); 2]> {
        Ok([
            (self.initial.center(), self.initial.support_radius(self.density_floor)?),
            (self.final_.center(), self.final_.support_radius(self.density_floor)?),
        ])
    }
}

impl TransitionDensity for Transition {
    #[inline]
    fn density(&self, r: Vec3) -> Complex64 {
        if self.initial == self.final_ {
            Complex64::new(self.initial.wavefunction(r).norm_sqr(), 0.0)
        } else {
            self.final_.wavefunction(r).conj() * self.initial.wavefunction(r)
        }
    }

    fn support_box(&self) -> Result<(Vec3, Vec3)> {
        let [(c1, r1), (c2, r2)] = self.supports()?;
        let lo = Vec3::new(
            (c1.x - r1).min(c2.x - r2),
            (c1.y - r1).min(c2.y - r2),
            (c1.z - r1).min(c2.z - r2),
        );
        let hi = Vec3::new(
            (c1.x + r1).max(c2.x + r2),
            (c1.y + r1).max(c2.y + r2),
            (c1.z + r1).max(c2.z + r2),
        );
        Ok((lo, hi))
    }

    fn default_grid(&self) -> Result<GridSpec> {
        let [(c1, r1), (c2, r2)] = self.supports()?;
        let center = if c1 == c2 { c1 } else { (c1 + c2) * 0.5 };
        let s = self.box_scale;
        let half = |a: f64, b: f64, c: f64| (a - c).abs().max((b - c).abs()) + s * r1.max(r2);
        let h = Vec3::new(
            half(c1.x, c2.x, center.x),
            half(c1.y, c2.y, center.y),
            half(c1.z, c2.z, center.z),
        );
        Ok(GridSpec::new(
            center,
            h,
            GridSpec::DEFAULT_NODES,
            GridSpec::DEFAULT_LEVELS,
        ))
    }

    fn azimuthal_charge(&self) -> Option<i32> {
        let on_axis = |s: &AtomicState| s.center().x == 0.0 && s.center().y == 0.0;
        (on_axis(&self.initial) && on_axis(&self.final_)).then(|| self.initial.m() - self.final_.m())
    }
}

fn check_coverage<T: TransitionDensity + ?Sized>(target: &T, grid: &GridSpec) -> Result<()> {
    grid.validate()?;
    let (lo, hi) = target.support_box()?;
    if grid.covers(lo, hi) {
        return Ok(());
    }
    let a = grid.center - grid.half_widths;
    let b = grid.center + grid.half_widths;
    Err(Error::Coverage(format!(
        "grid box [{:.4}, {:.4}, {:.4}]..[{:.4}, {:.4}, {:.4}] does not cover the required support \
         [{:.4}, {:.4}, {:.4}]..[{:.4}, {:.4}, {:.4}] bohr",
        a.x, a.y, a.z, b.x, b.y, b.z, lo.x, lo.y, lo.z, hi.x, hi.y, hi.z
    )))
}

/// Plane-wave form factor of an arbitrary transition density.
pub fn plane_wave_ff_with<T: TransitionDensity + ?Sized>(
    target: &T,
    q: Vec3,
    grid: &GridSpec,
) -> Result<FormFactorResult> {
    check_coverage(target, grid)?;
    let quad = integrate_3d_guarded(
        |r| target.density(r) * Complex64::from_polar(1.0, q.dot(r)),
        grid,
        Some(q.norm()),
    )?;
    Ok(FormFactorResult {
        value: quad.value,
        abs_error_estimate: quad.abs_error_estimate,
        grid: *grid,
        warnings: quad.warnings.into_iter().map(Warning::Quadrature).collect(),
    })
}

/// `M = <f| e^{iq·r} |i>`.
pub fn plane_wave_ff(
    initial: &AtomicState,
    final_: &AtomicState,
    q: Vec3,
    grid: &GridSpec,
) -> Result<FormFactorResult> {
    plane_wave_ff_with(&Transition::new(*initial, *final_), q, grid)
}

fn check_beams(beam_in: &BeamParams, beam_out: &BeamParams, geom: &ScatteringGeometry) -> Result<Vec<Warning>> {
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-12 * a.abs().max(b.abs());
    if !close(geom.k_i, beam_in.k()) || !close(geom.k_f, beam_out.k()) {
        return Err(Error::domain(format!(
            "geometry wavenumbers ({}, {}) do not match beam wavenumbers ({}, {})",
            geom.k_i,
            geom.k_f,
            beam_in.k(),
            beam_out.k()
        )));
    }
    let mut warnings = Vec::new();
    for (name, b) in [("in", beam_in), ("out", beam_out)] {
        if b.paraxial_warning() {
            warnings.push(Warning::Paraxial {
                beam: name.to_string(),
                divergence_deg: b.divergence().to_degrees(),
            });
        }
    }
    if beam_in.wavelength() != beam_out.wavelength() || beam_in.rayleigh_range() != beam_out.rayleigh_range() {
        warnings.push(Warning::PrefactorFromIncomingBeam);
    }
    Ok(warnings)
}

/// Vortex form factor of an arbitrary transition density.
pub fn vortex_ff_with<T: TransitionDensity + ?Sized>(
    target: &T,
    beam_in: &BeamParams,
    beam_out: &BeamParams,
    geom: &ScatteringGeometry,
    grid: &GridSpec,
) -> Result<FormFactorResult> {
    let mut warnings = check_beams(beam_in, beam_out, geom)?;
    check_coverage(target, grid)?;
    let q = geom.q();
    let prefactor = 0.5 * beam_in.wavelength() * beam_in.rayleigh_range();
    let gradient = q.norm() + geom.k_i * grid.diagonal() / beam_in.rayleigh_range();
    let quad = integrate_3d_guarded(
        |r| {
            let d = target.density(r);
            if d == Complex64::new(0.0, 0.0) {
                return d;
            }
            let u_in = beam_in.lg_mode_at(r);
            let u_out = beam_out.lg_mode_at(geom.to_scattered_frame(r));
            d * u_out.conj() * u_in * Complex64::from_polar(1.0, q.dot(r))
        },
        grid,
        Some(gradient),
    )?;
    warnings.extend(quad.warnings.into_iter().map(Warning::Quadrature));
    Ok(FormFactorResult {
        value: quad.value * prefactor,
        abs_error_estimate: quad.abs_error_estimate * prefactor,
        grid: *grid,
        warnings,
    })
}

/// `M_v = ½ λ z_R ∫ φ_f* u_f*(r') e^{iq·r} u_i(r) φ_i d³r`.
pub fn vortex_ff(
    initial: &AtomicState,
    final_: &AtomicState,
    beam_in: &BeamParams,
    beam_out: &BeamParams,
    geom: &ScatteringGeometry,
    grid: &GridSpec,
) -> Result<FormFactorResult> {
    vortex_ff_with(&Transition::new(*initial, *final_), beam_in, beam_out, geom, grid)
}

/// Geometric structure factor `Σ_j e^{iq·R_j}` of a multi-center target.
pub fn structure_factor(q: Vec3, centers: &[Vec3]) -> Result<Complex64> {
    if centers.is_empty() {
        return Err(Error::domain("structure factor needs at least one center"));
    }
    Ok(centers.iter().map(|c| Complex64::from_polar(1.0, q.dot(*c))).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn s1() -> AtomicState {
        AtomicState::ground()
    }

    fn grid_for(t: &Transition) -> GridSpec {
        t.default_grid().unwrap()
    }

    #[test]
    fn rotation_examples() {
        let r = Vec3::new(0.3, -1.2, 2.0);
        assert_eq!(rotate_to_scattered_frame(r, 0.0), r);
        let y = rotate_to_scattered_frame(Vec3::Z, PI / 2.0);
        assert!((y - Vec3::Y).norm() < 1e-15);
        for &t in &[0.1, 1.0, 2.5, PI] {
            assert_relative_eq!(rotate_to_scattered_frame(r, t).norm(), r.norm(), max_relative = 1e-15);
        }
    }

    #[test]
    fn outgoing_direction_maps_to_frame_axis() {
        for &az in &[FRAC_PI_2, 0.0, 1.0, -2.0] {
            for &t in &[0.0, 0.3, 1.7, PI] {
                let g = ScatteringGeometry::with_azimuth(1.0, 1.0, t, az).unwrap();
                let z = g.to_scattered_frame(g.k_f_hat());
                assert!((z - Vec3::Z).norm() < 1e-14, "az={az} t={t}: {z:?}");
                let q = g.q();
                assert_relative_eq!(q.norm(), 2.0 * (t / 2.0).sin(), epsilon = 1e-14);
                if t > 0.0 {
                    assert_relative_eq!(q.y.atan2(q.x), az.sin().atan2(az.cos()), epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn geometry_validation() {
        assert!(ScatteringGeometry::new(0.0, 1.0, 0.1).is_err());
        assert!(ScatteringGeometry::new(1.0, 1.0, -0.1).is_err());
        assert!(ScatteringGeometry::new(1.0, 1.0, 4.0).is_err());
        let g = ScatteringGeometry::from_momentum_transfer(2.0, 1.0, 0.3).unwrap();
        assert_relative_eq!(g.q().norm(), 1.0, epsilon = 1e-14);
        assert!(ScatteringGeometry::from_momentum_transfer(2.0, 5.0, 0.0).is_err());
    }

    #[test]
    fn inelastic_q_from_both_wavevectors() {
        let g = ScatteringGeometry::new(2.0, 1.5, 0.0).unwrap();
        assert_relative_eq!(g.q().z, 0.5, epsilon = 1e-15);
    }

    #[test]
    fn plane_wave_examples() {
        let t = Transition::new(s1(), s1());
        let g = grid_for(&t);
        let m0 = plane_wave_ff(&s1(), &s1(), Vec3::ZERO, &g).unwrap();
        assert!((m0.value - 1.0).norm() < 1e-9);
        let m1 = plane_wave_ff(&s1(), &s1(), Vec3::new(0.0, 0.6, 0.8), &g).unwrap();
        assert!((m1.value.re - 0.64).abs() < 1e-6 * 0.64, "{}", m1.value);
        assert!(m1.value.im.abs() < 1e-12);

        let s2 = AtomicState::at_origin(2, 0, 0).unwrap();
        let t12 = Transition::new(s1(), s2);
        let m = plane_wave_ff(&s1(), &s2, Vec3::ZERO, &grid_for(&t12)).unwrap();
        assert!(m.value.norm() < 1e-9, "{}", m.value);
    }

    #[test]
    fn small_grid_refused() {
        let g = GridSpec::cube(Vec3::ZERO, 5.0);
        let e = plane_wave_ff(&s1(), &s1(), Vec3::ZERO, &g).unwrap_err();
        assert!(matches!(e, Error::Coverage(_)));
        assert_eq!(e.exit_code(), 4);
    }

    #[test]
    fn hermiticity() {
        let a = AtomicState::at_origin(2, 1, 1).unwrap();
        let b = AtomicState::at_origin(2, 0, 0).unwrap();
        let q = Vec3::new(0.2, -0.3, 0.4);
        let g = grid_for(&Transition::new(a, b)).with_nodes(48, 2);
        let fwd = plane_wave_ff(&a, &b, q, &g).unwrap();
        let back = plane_wave_ff(&b, &a, -q, &g).unwrap();
        assert!((fwd.value - back.value.conj()).norm() < 1e-10);
        assert!(fwd.value.norm() > 1e-3);
    }

    #[test]
    fn shift_multiplies_by_phase() {
        let q = Vec3::new(0.1, 0.4, -0.5);
        let base = grid_for(&Transition::new(s1(), s1())).with_nodes(48, 2);
        let m0 = plane_wave_ff(&s1(), &s1(), q, &base).unwrap().value;
        let b = Vec3::new(3.0, -1.0, 0.0);
        let shifted = s1().with_center(b);
        let g = GridSpec { center: b, ..base };
        let mb = plane_wave_ff(&shifted, &shifted, q, &g).unwrap().value;
        let expect = m0 * Complex64::from_polar(1.0, q.dot(b));
        assert!((mb - expect).norm() < 1e-12);
    }

    #[test]
    fn default_grid_covers_displaced_pair() {
        let a = s1().with_center(Vec3::new(10.0, 0.0, 0.0));
        let b = AtomicState::new(2, 1, 0, Vec3::new(-4.0, 3.0, 0.0)).unwrap();
        let t = Transition::new(a, b);
        let g = t.default_grid().unwrap();
        let (lo, hi) = t.support_box().unwrap();
        assert!(g.covers(lo, hi));
    }

    #[test]
    fn vortex_gaussian_wide_beam_reduces_to_plane_wave() {
        let beam = BeamParams::new(100.0, 1e8, 0, 0).unwrap();
        let geom = ScatteringGeometry::for_beams(&beam, &beam, 0.0).unwrap();
        let t = Transition::new(s1(), s1());
        let g = grid_for(&t).with_nodes(48, 2);
        let mv = vortex_ff(&s1(), &s1(), &beam, &beam, &geom, &g).unwrap();
        assert!((mv.value - 1.0).norm() < 1e-8, "{}", mv.value);
        assert!(mv.warnings.is_empty(), "{:?}", mv.warnings);
    }

    #[test]
    fn vortex_rejects_mismatched_geometry() {
        let beam = BeamParams::new(100.0, 1e4, 0, 0).unwrap();
        let geom = ScatteringGeometry::elastic(1.0, 0.0).unwrap();
        let g = grid_for(&Transition::new(s1(), s1()));
        assert!(vortex_ff(&s1(), &s1(), &beam, &beam, &geom, &g).is_err());
    }

    #[test]
    fn vortex_warnings() {
        let a = BeamParams::new(10.0, 5.0, 0, 0).unwrap();
        let b = BeamParams::new(10.0, 20.0, 0, 0).unwrap();
        let geom = ScatteringGeometry::for_beams(&a, &b, 0.1).unwrap();
        let g = grid_for(&Transition::new(s1(), s1())).with_nodes(8, 1);
        let r = vortex_ff(&s1(), &s1(), &a, &b, &geom, &g).unwrap();
        assert!(r.warnings.iter().any(|w| matches!(w, Warning::Paraxial { .. })));
        assert!(r.warnings.contains(&Warning::PrefactorFromIncomingBeam));
    }

    #[test]
    fn oam_transfer_forbidden_for_s_state_on_axis() {
        let bi = BeamParams::new(100.0, 1e3, 0, 1).unwrap();
        let bf = bi.with_mode(0, -1).unwrap();
        let geom = ScatteringGeometry::for_beams(&bi, &bf, 0.0).unwrap();
        let g = grid_for(&Transition::new(s1(), s1())).with_nodes(24, 1);
        let forbidden = vortex_ff(&s1(), &s1(), &bi, &bf, &geom, &g).unwrap();
        let allowed = vortex_ff(&s1(), &s1(), &bi, &bi, &geom, &g).unwrap();
        assert!(forbidden.value.norm() < 1e-12 * allowed.value.norm());
    }

    /// Azimuthal factor of the Θ = 0 integrand, `∫ e^{i(ℓ_i+M_i-ℓ_f-M_f)φ} dφ`,
    /// by an explicit 1D trapezoid.
    fn azimuthal_oracle(delta: i32) -> f64 {
        let n = 64;
        (0..n)
            .map(|j| Complex64::from_polar(1.0, delta as f64 * 2.0 * PI * j as f64 / n as f64))
            .sum::<Complex64>()
            .norm()
            * 2.0
            * PI
            / n as f64
    }

    #[test]
    fn selection_rule_1s_to_2p() {
        let bi = BeamParams::new(100.0, 1e3, 0, 1).unwrap();
        let bf = bi.with_mode(0, 0).unwrap();
        let geom = ScatteringGeometry::for_beams(&bi, &bf, 0.0).unwrap();
        let mut mags = Vec::new();
        for mf in -1..=1 {
            let f = AtomicState::at_origin(2, 1, mf).unwrap();
            let g = grid_for(&Transition::new(s1(), f)).with_nodes(24, 1);
            let v = vortex_ff(&s1(), &f, &bi, &bf, &geom, &g).unwrap().value.norm();
            mags.push((mf, v, azimuthal_oracle(1 - mf)));
        }
        let allowed = mags.iter().find(|m| m.0 == 1).unwrap().1;
        assert!(allowed > 1e-6);
        for (mf, v, oracle) in mags {
            if oracle < 1e-12 {
                assert!(v < 1e-10 * allowed, "M_f={mf}: {v}");
            } else {
                assert_eq!(mf, 1);
            }
        }
    }

    #[test]
    fn axial_rotation_multiplies_by_phase() {
        let bi = BeamParams::new(20.0, 200.0, 0, 1).unwrap();
        let bf = bi.with_mode(1, -1).unwrap();
        let a = AtomicState::new(2, 1, 1, Vec3::new(0.0, 0.0, 0.7)).unwrap();
        let t = Transition::new(s1().with_center(Vec3::new(0.0, 0.0, 0.7)), a);
        let charge = t.azimuthal_charge().unwrap();
        assert_eq!(charge, -1);
        let g = t.default_grid().unwrap().with_nodes(48, 1);
        let at = |az: f64| {
            let geom = ScatteringGeometry::with_azimuth(bi.k(), bf.k(), 0.6, az).unwrap();
            vortex_ff_with(&t, &bi, &bf, &geom, &g).unwrap().value
        };
        let base = at(0.0);
        assert!(base.norm() > 1e-6);
        let total = charge + bi.ell() - bf.ell();
        for &alpha in &[0.5, 2.0, -1.3] {
            let expect = base * Complex64::from_polar(1.0, total as f64 * alpha);
            assert!(
                (at(alpha) - expect).norm() < 1e-6 * base.norm(),
                "α={alpha}: {} vs {expect} (base {base})",
                at(alpha)
            );
        }
        let off = Transition::new(s1().with_center(Vec3::new(1.0, 0.0, 0.0)), a);
        assert!(off.azimuthal_charge().is_none());
    }

    #[test]
    fn structure_factor_examples() {
        let q = Vec3::new(0.3, 0.1, -0.7);
        assert_eq!(structure_factor(q, &[Vec3::ZERO]).unwrap(), Complex64::new(1.0, 0.0));
        let d = Vec3::new(1.0, 2.0, 0.5);
        let pair = structure_factor(q, &[d * 0.5, -d * 0.5]).unwrap();
        assert_relative_eq!(pair.re, 2.0 * (q.dot(d) / 2.0).cos(), epsilon = 1e-15);
        assert!(pair.im.abs() < 1e-15);
        assert!(structure_factor(q, &[]).is_err());
        let many: Vec<Vec3> = (0..7).map(|i| Vec3::new(i as f64 * 0.37, -(i as f64), 1.1)).collect();
        assert!(structure_factor(q, &many).unwrap().norm() <= 7.0 + 1e-12);
    }
}
