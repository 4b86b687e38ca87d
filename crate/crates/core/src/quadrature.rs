//! Deterministic tensor-product Gauss-Legendre quadrature.
//!
//! A [`GridSpec`] describes a Cartesian box. Each axis is split at the box
//! center and every half carries `nodes_per_axis / 2` Gauss-Legendre nodes,
//! optionally graded quadratically toward the center (see [`AxisMap`]). The
//! graded map keeps the rule spectrally accurate for integrands with a cusp
//! at the box center, which is where the nucleus of a hydrogenic target sits.
//!
//! Samples may be evaluated on any number of rayon workers. Each x-slice of
//! the grid is reduced with compensated summation in a fixed index order and
//! the slice totals are then reduced in slice order, so the result does not
//! depend on the worker count.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::vec3::Vec3;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(n, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let p = if n == 0 { p0 } else { p1 };
    let d = n as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

/// Neumaier-compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: Complex64) {
        self.sum.re = neumaier(self.sum.re, &mut self.comp.re, v.re);
        self.sum.im = neumaier(self.sum.im, &mut self.comp.im, v.im);
    }

    pub fn total(&self) -> Complex64 {
        self.sum + self.comp
    }
}

#[inline]
fn neumaier(sum: f64, comp: &mut f64, v: f64) -> f64 {
    let t = sum + v;
    if sum.abs() >= v.abs() {
        *comp += (sum - t) + v;
    } else {
        *comp += (v - t) + sum;
    }
    t
}

/// Node placement along each axis of a [`GridSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisMap {
    /// Each half-axis uses `x = c ± h·t²` over Gauss-Legendre nodes in `t`.
    #[default]
    CenterGraded,
    /// Each half-axis uses Gauss-Legendre nodes directly.
    Uniform,
}

/// Tensor-product quadrature box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub center: Vec3,
    pub half_widths: Vec3,
    pub nodes_per_axis: usize,
    pub refinement_levels: usize,
    #[serde(default)]
    pub axis_map: AxisMap,
}

impl GridSpec {
    pub const DEFAULT_NODES: usize = 48;
    pub const DEFAULT_LEVELS: usize = 3;

    pub fn new(center: Vec3, half_widths: Vec3, nodes_per_axis: usize, refinement_levels: usize) -> Self {
        GridSpec {
            center,
            half_widths,
            nodes_per_axis,
            refinement_levels,
            axis_map: AxisMap::default(),
        }
    }

    /// Cube of half-width `h` around `center` with the default node counts.
    pub fn cube(center: Vec3, h: f64) -> Self {
        GridSpec::new(center, Vec3::new(h, h, h), Self::DEFAULT_NODES, Self::DEFAULT_LEVELS)
    }

    pub fn with_nodes(mut self, nodes_per_axis: usize, refinement_levels: usize) -> Self {
        self.nodes_per_axis = nodes_per_axis;
        self.refinement_levels = refinement_levels;
        self
    }

    pub fn with_axis_map(mut self, map: AxisMap) -> Self {
        self.axis_map = map;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let h = self.half_widths;
        if !(h.x > 0.0 && h.y > 0.0 && h.z > 0.0) || !h.is_finite() {
            return Err(Error::domain("grid half-widths must be finite and strictly positive"));
        }
        if !self.center.is_finite() {
            return Err(Error::domain("grid center must be finite"));
        }
        if self.nodes_per_axis < 4 || !self.nodes_per_axis.is_multiple_of(2) {
            return Err(Error::domain(format!(
                "nodes_per_axis must be even and at least 4, got {}",
                self.nodes_per_axis
            )));
        }
        if self.refinement_levels < 1 {
            return Err(Error::domain("refinement_levels must be at least 1"));
        }
        Ok(())
    }

    pub fn volume(&self) -> f64 {
        8.0 * self.half_widths.x * self.half_widths.y * self.half_widths.z
    }

    /// Length of the full box diagonal.
    pub fn diagonal(&self) -> f64 {
        2.0 * self.half_widths.norm()
    }

    /// Node count at refinement level `level` (0-based).
    pub fn nodes_at_level(&self, level: usize) -> usize {
        (0..level).fold(self.nodes_per_axis, |n, _| next_level_nodes(n))
    }

    /// Whether the box `[lo, hi]` (componentwise) fits inside this grid.
    pub fn covers(&self, lo: Vec3, hi: Vec3) -> bool {
        let a = self.center - self.half_widths;
        let b = self.center + self.half_widths;
        lo.x >= a.x && lo.y >= a.y && lo.z >= a.z && hi.x <= b.x && hi.y <= b.y && hi.z <= b.z
    }
}

/// Multiplies by 1.5 and rounds up to the next even integer.
pub fn next_level_nodes(n: usize) -> usize {
    let m = (3 * n).div_ceil(2);
    m + m % 2
}

/// Diagnostics attached to a quadrature result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum QuadWarning {
    /// Fewer than six nodes per shortest oscillation across the box.
    Undersampled {
        nodes_per_axis: usize,
        required_nodes: usize,
        max_phase_gradient: f64,
    },
    /// Only one refinement level was run, so no error estimate exists.
    NoErrorEstimate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadResult {
    pub value: Complex64,
    pub abs_error_estimate: f64,
    pub levels_used: usize,
    pub warnings: Vec<QuadWarning>,
}

pub(crate) struct AxisRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

pub(crate) fn axis_rule(center: f64, half_width: f64, n: usize, map: AxisMap) -> AxisRule {
    let half = n / 2;
    let (t, w) = gauss_legendre(half);
    // map [-1, 1] onto [0, 1]
    let t: Vec<f64> = t.iter().map(|x| 0.5 * (x + 1.0)).collect();
    let w: Vec<f64> = w.iter().map(|x| 0.5 * x).collect();
    let (s, ds): (Vec<f64>, Vec<f64>) = match map {
        AxisMap::CenterGraded => t.iter().map(|&t| (t * t, 2.0 * t)).unzip(),
        AxisMap::Uniform => t.iter().map(|&t| (t, 1.0)).unzip(),
    };
    let mut nodes = Vec::with_capacity(2 * half);
    let mut weights = Vec::with_capacity(2 * half);
    for i in (0..half).rev() {
        nodes.push(center - half_width * s[i]);
        weights.push(half_width * w[i] * ds[i]);
    }
    for i in 0..half {
        nodes.push(center + half_width * s[i]);
        weights.push(half_width * w[i] * ds[i]);
    }
    AxisRule { nodes, weights }
}

fn integrate_level<F>(f: &F, grid: &GridSpec, n: usize) -> Result<Complex64>
where
    F: Fn(Vec3) -> Complex64 + Sync,
{
    let c = grid.center;
    let h = grid.half_widths;
    let ax = axis_rule(c.x, h.x, n, grid.axis_map);
    let ay = axis_rule(c.y, h.y, n, grid.axis_map);
    let az = axis_rule(c.z, h.z, n, grid.axis_map);

    let slices: Vec<std::result::Result<Complex64, Vec3>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let x = ax.nodes[i];
            let wx = ax.weights[i];
            let mut acc = CompensatedSum::new();
            for (y, wy) in ay.nodes.iter().zip(&ay.weights) {
                let wxy = wx * wy;
                for (z, wz) in az.nodes.iter().zip(&az.weights) {
                    let p = Vec3::new(x, *y, *z);
                    let v = f(p);
                    if !(v.re.is_finite() && v.im.is_finite()) {
                        return Err(p);
                    }
                    acc.add(v * (wxy * wz));
                }
            }
            Ok(acc.total())
        })
        .collect();

    let mut total = CompensatedSum::new();
    for s in slices {
        match s {
            Ok(v) => total.add(v),
            Err(point) => return Err(Error::Evaluation { point }),
        }
    }
    Ok(total.total())
}

/// Integrates `f` over the box of `grid`.
///
/// Level `k` uses `nodes_at_level(k)` nodes per axis. The error estimate is
/// the difference between the two finest levels.
pub fn integrate_3d<F>(f: F, grid: &GridSpec) -> Result<QuadResult>
where
    F: Fn(Vec3) -> Complex64 + Sync,
{
    integrate_3d_guarded(f, grid, None)
}

/// As [`integrate_3d`], additionally checking the finest level against the
/// oscillation implied by `max_phase_gradient` (radians per bohr).
pub fn integrate_3d_guarded<F>(f: F, grid: &GridSpec, max_phase_gradient: Option<f64>) -> Result<QuadResult>
where
    F: Fn(Vec3) -> Complex64 + Sync,
{
    grid.validate()?;
    let mut prev: Option<Complex64> = None;
    let mut value = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    for level in 0..grid.refinement_levels {
        let n = grid.nodes_at_level(level);
        value = integrate_level(&f, grid, n)?;
        if let Some(p) = prev {
            err = (value - p).norm();
        }
        prev = Some(value);
    }

    let mut warnings = Vec::new();
    if grid.refinement_levels == 1 {
        warnings.push(QuadWarning::NoErrorEstimate);
    }
    if let Some(g) = max_phase_gradient {
        let finest = grid.nodes_at_level(grid.refinement_levels - 1);
        let required = required_nodes(grid, g);
        if finest < required {
            warnings.push(QuadWarning::Undersampled {
                nodes_per_axis: finest,
                required_nodes: required,
                max_phase_gradient: g,
            });
        }
    }
    Ok(QuadResult {
        value,
        abs_error_estimate: err,
        levels_used: grid.refinement_levels,
        warnings,
    })
}

/// Nodes per axis needed for six samples per shortest oscillation across the
/// widest box edge.
pub fn required_nodes(grid: &GridSpec, max_phase_gradient: f64) -> usize {
    let h = grid.half_widths;
    let width = 2.0 * h.x.max(h.y).max(h.z);
    let oscillations = width * max_phase_gradient.abs() / (2.0 * PI);
    (6.0 * oscillations).ceil() as usize
}

/// Gauss-Legendre in `rho` over `[0, rho_max]` times the trapezoid rule in
/// `phi`, both with `nodes` points.
pub fn integrate_polar_2d<G>(g: G, rho_max: f64, nodes: usize) -> Result<Complex64>
where
    G: Fn(f64, f64) -> Complex64,
{
    PolarRule::new(rho_max, nodes, nodes)?.integrate(g)
}

/// Tensor polar rule: Gauss-Legendre radial nodes on `[0, rho_max]` and
/// equispaced azimuthal nodes `phi_j = 2πj / n_phi`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarRule {
    pub rho_max: f64,
    pub rho_nodes: Vec<f64>,
    /// Radial weights including the `rho` Jacobian.
    pub rho_weights: Vec<f64>,
    pub n_phi: usize,
}

impl PolarRule {
    pub fn new(rho_max: f64, n_rho: usize, n_phi: usize) -> Result<Self> {
        if !(rho_max > 0.0) || !rho_max.is_finite() {
            return Err(Error::domain(format!("rho_max must be positive, got {rho_max}")));
        }
        if n_rho == 0 || n_phi == 0 {
            return Err(Error::domain("polar rule needs at least one node per direction"));
        }
        let (x, w) = gauss_legendre(n_rho);
        let rho_nodes: Vec<f64> = x.iter().map(|x| 0.5 * rho_max * (x + 1.0)).collect();
        let rho_weights = rho_nodes.iter().zip(&w).map(|(r, w)| 0.5 * rho_max * w * r).collect();
        Ok(PolarRule {
            rho_max,
            rho_nodes,
            rho_weights,
            n_phi,
        })
    }

    pub fn phi(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.n_phi as f64
    }

    pub fn phi_weight(&self) -> f64 {
        2.0 * PI / self.n_phi as f64
    }

    pub fn len(&self) -> usize {
        self.rho_nodes.len() * self.n_phi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(rho, phi, weight)` in row-major (radius-major) order.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let wphi = self.phi_weight();
        self.rho_nodes
            .iter()
            .zip(&self.rho_weights)
            .flat_map(move |(&r, &w)| (0..self.n_phi).map(move |j| (r, self.phi(j), w * wphi)))
    }

    pub fn integrate<G>(&self, g: G) -> Result<Complex64>
    where
        G: Fn(f64, f64) -> Complex64,
    {
        let mut acc = CompensatedSum::new();
        for (r, phi, w) in self.points() {
            let v = g(r, phi);
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::Evaluation {
                    point: Vec3::new(r * phi.cos(), r * phi.sin(), 0.0),
                });
            }
            acc.add(v * w);
        }
        Ok(acc.total())
    }
}
