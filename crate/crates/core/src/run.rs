//! Executes a [`RunConfig`]: expands sweeps, evaluates points concurrently
//! and collects rows in sweep order.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::atom::AtomicState;
use crate::beam::BeamParams;
use crate::config::{emit, FormFactorKind, GeometryPoint, ImpactSource, Mode, RunConfig, SweepParam};
use crate::error::{Error, Result};
use crate::formfactor::{
    plane_wave_ff_with, vortex_ff_with, FormFactorResult, ScatteringGeometry, Transition, TransitionDensity,
};
use crate::observables::{
    adaptive_b_profile, parseval_check, thomson_dcs, vortex_factor, BGridOptions, PolarizationPair, QProfile,
};
use crate::quadrature::GridSpec;
use crate::vec3::Vec3;

/// Provenance written alongside every result table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    pub mode: String,
    pub length_unit: String,
    /// Effective configuration with all defaults applied, as TOML.
    pub config: String,
    /// Quadrature grid of the first evaluated point.
    pub grid: Option<GridSpec>,
    pub warnings: Vec<String>,
}

/// Column-oriented result of a run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
    pub metadata: Metadata,
    /// Summary values written after the table.
    pub footer: Vec<(&'static str, f64)>,
}

struct Point {
    sweep_value: Option<f64>,
    initial: AtomicState,
    final_: AtomicState,
    beam_in: Option<BeamParams>,
    beam_out: Option<BeamParams>,
    geometry: GeometryPoint,
}

struct Evaluated {
    row: Vec<f64>,
    grid: GridSpec,
    warnings: Vec<String>,
}

/// Runs `config` on the current rayon pool.
pub fn run(config: &RunConfig) -> Result<RunOutput> {
    config.validate()?;
    let effective = emit(config)?;
    let mut metadata = Metadata {
        tool: "vortexff".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        mode: config.mode.name().into(),
        length_unit: config.units.length.name().into(),
        config: effective,
        grid: None,
        warnings: Vec::new(),
    };
    if config.mode == Mode::ImpactProfile {
        return impact_profile(config, metadata);
    }

    let points = expand(config)?;
    let evaluated = points
        .par_iter()
        .map(|p| evaluate(config, p))
        .collect::<Result<Vec<_>>>()?;
    metadata.grid = evaluated.first().map(|e| e.grid);
    for e in &evaluated {
        for w in &e.warnings {
            if !metadata.warnings.contains(w) {
                metadata.warnings.push(w.clone());
            }
        }
    }
    let mut columns = Vec::new();
    if config.sweep.is_some() {
        columns.push("sweep_value");
    }
    columns.extend_from_slice(match config.mode {
        Mode::Plane => &["theta", "q", "re_M", "im_M", "abs_M2", "err_est"][..],
        Mode::Vortex => &["theta", "q", "re_Mv", "im_Mv", "abs_Mv2", "err_est"][..],
        Mode::TvScan => &[
            "re_Mv", "im_Mv", "abs_Mv2", "re_Mp", "im_Mp", "abs_Mp2", "T_v", "err_est",
        ][..],
        Mode::Xsec => &["theta", "q", "re_M", "im_M", "abs_M2", "thomson", "compton", "err_est"][..],
        Mode::ImpactProfile => unreachable!(),
    });
    Ok(RunOutput {
        columns,
        rows: evaluated.into_iter().map(|e| e.row).collect(),
        metadata,
        footer: Vec::new(),
    })
}

/// Runs `config` on a dedicated pool of `threads` workers.
pub fn run_with_threads(config: &RunConfig, threads: usize) -> Result<RunOutput> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Io(format!("cannot start worker pool: {e}")))?;
    pool.install(|| run(config))
}

fn expand(config: &RunConfig) -> Result<Vec<Point>> {
    let unit = config.units.length.to_bohr();
    let initial = config.atom_initial.with_center(config.atom_initial.center() * unit);
    let final_ = config.atom_final().with_center(config.atom_final().center() * unit);
    let base = Point {
        sweep_value: None,
        initial,
        final_,
        beam_in: config.beam_in_bohr()?,
        beam_out: config.beam_out_bohr()?,
        geometry: GeometryPoint::Theta(0.0),
    };
    let geometries = config.geometry.points();
    let geometries: Vec<GeometryPoint> = geometries
        .into_iter()
        .map(|g| match g {
            GeometryPoint::Q(q) => GeometryPoint::Q(q / unit),
            t => t,
        })
        .collect();
    let sweep: Vec<Option<f64>> = match &config.sweep {
        Some(s) => s.values.iter().map(|&v| Some(v)).collect(),
        None => vec![None],
    };
    let mut points = Vec::new();
    for s in sweep {
        for g in &geometries {
            let mut p = Point {
                sweep_value: s,
                geometry: *g,
                ..base
            };
            if let (Some(v), Some(sw)) = (s, &config.sweep) {
                apply_sweep(&mut p, sw.parameter, config.sweep_value_to_bohr(sw.parameter, v))?;
            }
            points.push(p);
        }
    }
    Ok(points)
}

fn apply_sweep(p: &mut Point, param: SweepParam, v: f64) -> Result<()> {
    let both = |p: &mut Point, f: &dyn Fn(&BeamParams) -> Result<BeamParams>| -> Result<()> {
        p.beam_in = p.beam_in.as_ref().map(f).transpose()?;
        p.beam_out = p.beam_out.as_ref().map(f).transpose()?;
        Ok(())
    };
    match param {
        SweepParam::ZR => both(p, &|b| b.with_rayleigh_range(v))?,
        SweepParam::Ell => both(p, &|b| b.with_mode(b.p(), v as i32))?,
        SweepParam::P => both(p, &|b| b.with_mode(v as u32, b.ell()))?,
        SweepParam::B => {
            let c = p.initial.center();
            p.initial = p.initial.with_center(Vec3::new(v, c.y, c.z));
            let c = p.final_.center();
            p.final_ = p.final_.with_center(Vec3::new(v, c.y, c.z));
        }
        SweepParam::Theta => p.geometry = GeometryPoint::Theta(v),
    }
    Ok(())
}

fn transition(config: &RunConfig, initial: AtomicState, final_: AtomicState) -> Transition {
    Transition::new(initial, final_)
        .with_density_floor(config.grid.density_floor)
        .with_box_scale(config.grid.box_scale)
}

fn grid_for(config: &RunConfig, t: &Transition) -> Result<GridSpec> {
    let g = &config.grid;
    let mut grid = t.default_grid()?;
    if let Some(h) = g.half_width {
        grid = GridSpec::cube(grid.center, h * config.units.length.to_bohr());
    }
    Ok(grid
        .with_nodes(g.nodes_per_axis, g.refinement_levels)
        .with_axis_map(g.axis_map))
}

fn geometry(p: &Point, azimuth: f64) -> Result<ScatteringGeometry> {
    let (bi, bo) = (p.beam_in.expect("validated"), p.beam_out.expect("validated"));
    match p.geometry {
        GeometryPoint::Theta(t) => ScatteringGeometry::with_azimuth(bi.k(), bo.k(), t, azimuth),
        GeometryPoint::Q(q) => ScatteringGeometry::from_momentum_transfer(bi.k(), q, azimuth),
    }
}

fn check_tolerance(config: &RunConfig, r: &FormFactorResult) -> Result<()> {
    match config.grid.tolerance {
        Some(t) if r.abs_error_estimate > t => Err(Error::NonConvergence {
            estimate: r.abs_error_estimate,
            tolerance: t,
        }),
        _ => Ok(()),
    }
}

fn warning_strings(r: &FormFactorResult) -> Vec<String> {
    r.warnings
        .iter()
        .map(|w| serde_json::to_string(w).unwrap_or_else(|_| format!("{w:?}")))
        .collect()
}

fn evaluate(config: &RunConfig, p: &Point) -> Result<Evaluated> {
    let azimuth = config.geometry.azimuth;
    let t = transition(config, p.initial, p.final_);
    let grid = grid_for(config, &t)?;
    let sweep: Vec<f64> = p.sweep_value.into_iter().collect();
    let unit = config.units.length.to_bohr();

    let plane_q = |p: &Point| -> Result<(Option<ScatteringGeometry>, Vec3)> {
        match (p.beam_in, p.geometry) {
            (Some(_), _) => {
                let g = geometry(p, azimuth)?;
                Ok((Some(g), g.q()))
            }
            (None, GeometryPoint::Q(q)) => Ok((None, Vec3::Z * q)),
            (None, GeometryPoint::Theta(_)) => Err(Error::domain("an angle needs a beam wavenumber")),
        }
    };
    let angle = |g: &Option<ScatteringGeometry>| g.map_or(f64::NAN, |g| g.theta);

    let (row, warnings) = match config.mode {
        Mode::Plane => {
            let (g, q) = plane_q(p)?;
            let r = plane_wave_ff_with(&t, q, &grid)?;
            check_tolerance(config, &r)?;
            let row = [
                angle(&g),
                q.norm() * unit,
                r.value.re,
                r.value.im,
                r.value.norm_sqr(),
                r.abs_error_estimate,
            ];
            (row.to_vec(), warning_strings(&r))
        }
        Mode::Vortex => {
            let g = geometry(p, azimuth)?;
            let r = vortex_ff_with(&t, &p.beam_in.unwrap(), &p.beam_out.unwrap(), &g, &grid)?;
            check_tolerance(config, &r)?;
            let row = [
                g.theta,
                g.q().norm() * unit,
                r.value.re,
                r.value.im,
                r.value.norm_sqr(),
                r.abs_error_estimate,
            ];
            (row.to_vec(), warning_strings(&r))
        }
        Mode::TvScan => {
            let (bi, bo) = (p.beam_in.unwrap(), p.beam_out.unwrap());
            let f = config.tv.reference_factor;
            let (ri, ro) = (
                bi.with_rayleigh_range(bi.rayleigh_range() * f)?,
                bo.with_rayleigh_range(bo.rayleigh_range() * f)?,
            );
            let place = |s: AtomicState, w0: f64| match config.tv.b_in_waists {
                Some(b) => s.with_center(Vec3::new(b * w0, s.center().y, s.center().z)),
                None => s,
            };
            let tv_ = transition(config, place(p.initial, bi.waist()), place(p.final_, bi.waist()));
            let tp = transition(config, place(p.initial, ri.waist()), place(p.final_, ri.waist()));
            let g = geometry(p, azimuth)?;
            let gv = grid_for(config, &tv_)?;
            let mv = vortex_ff_with(&tv_, &bi, &bo, &g, &gv)?;
            let mp = vortex_ff_with(&tp, &ri, &ro, &g, &grid_for(config, &tp)?)?;
            check_tolerance(config, &mv)?;
            check_tolerance(config, &mp)?;
            let t_v = vortex_factor(mv.value, mp.value)?;
            let (av, ap) = (mv.value.norm(), mp.value.norm());
            let err =
                2.0 * av * mv.abs_error_estimate / (ap * ap) + 2.0 * av * av * mp.abs_error_estimate / (ap * ap * ap);
            let row = [
                mv.value.re,
                mv.value.im,
                mv.value.norm_sqr(),
                mp.value.re,
                mp.value.im,
                mp.value.norm_sqr(),
                t_v,
                err,
            ];
            let mut w = warning_strings(&mv);
            w.extend(warning_strings(&mp));
            return Ok(Evaluated {
                row: sweep.into_iter().chain(row).collect(),
                grid: gv,
                warnings: w,
            });
        }
        Mode::Xsec => {
            let g = geometry(p, azimuth)?;
            let r = match config.xsec.form_factor {
                FormFactorKind::Plane => plane_wave_ff_with(&t, g.q(), &grid)?,
                FormFactorKind::Vortex => vortex_ff_with(&t, &p.beam_in.unwrap(), &p.beam_out.unwrap(), &g, &grid)?,
            };
            check_tolerance(config, &r)?;
            let pol = PolarizationPair::projected(config.xsec.polarization, &g)?;
            let omega_ratio = g.k_f / g.k_i;
            let thomson = thomson_dcs(&pol, 1.0, omega_ratio)?;
            let row = [
                g.theta,
                g.q().norm() * unit,
                r.value.re,
                r.value.im,
                r.value.norm_sqr(),
                thomson,
                crate::observables::compton_dcs(r.value, thomson),
                r.abs_error_estimate,
            ];
            (row.to_vec(), warning_strings(&r))
        }
        Mode::ImpactProfile => unreachable!(),
    };
    Ok(Evaluated {
        row: sweep.into_iter().chain(row).collect(),
        grid,
        warnings,
    })
}

fn impact_profile(config: &RunConfig, mut metadata: Metadata) -> Result<RunOutput> {
    let unit = config.units.length.to_bohr();
    let im = &config.impact;
    let b_target = im.b_target * unit;
    let beam_in = config.beam_in_bohr()?;
    let k = match (im.k, beam_in) {
        (Some(k), _) => k / unit,
        (None, Some(b)) => b.k(),
        (None, None) => return Err(Error::domain("no wavenumber for the impact profile")),
    };
    let (auto_rho, auto_phi) = QProfile::resolution_for(2.0 * k, b_target);
    let n_rho = im.q_radial_nodes.unwrap_or(auto_rho);
    let n_phi = im.q_azimuthal_nodes.unwrap_or(auto_phi);

    let fq = match im.source {
        ImpactSource::Gaussian => QProfile::gaussian(k, im.sigma.expect("validated") * unit, n_rho, n_phi)?,
        ImpactSource::Vortex => {
            let initial = config.atom_initial.with_center(config.atom_initial.center() * unit);
            let final_ = config.atom_final().with_center(config.atom_final().center() * unit);
            let t = transition(config, initial, final_);
            let grid = grid_for(config, &t)?;
            metadata.grid = Some(grid);
            let (bi, bo) = (beam_in.expect("validated"), config.beam_out_bohr()?.expect("validated"));
            let (fq, warnings) = QProfile::vortex(&t, &bi, &bo, im.polarization, &grid, n_rho, n_phi)?;
            metadata.warnings = warnings
                .iter()
                .map(|w| serde_json::to_string(w).unwrap_or_default())
                .collect();
            fq
        }
    };
    let ab = adaptive_b_profile(&fq, BGridOptions::for_profile(&fq))?;
    for w in &ab.warnings {
        metadata.warnings.push(serde_json::to_string(w).unwrap_or_default());
    }
    let report = parseval_check(&fq, &ab.profile)?;
    let g = &ab.profile.grid;
    let rows = g
        .radial_nodes
        .iter()
        .enumerate()
        .flat_map(|(i, &b)| {
            (0..g.n_phi).map(move |j| {
                let phi = 2.0 * std::f64::consts::PI * j as f64 / g.n_phi as f64;
                let a: Complex64 = g.values[i * g.n_phi + j];
                vec![b / unit, phi, a.re, a.im, a.norm_sqr()]
            })
        })
        .collect();
    Ok(RunOutput {
        columns: vec!["b", "phi_b", "re_a", "im_a", "abs_a2"],
        rows,
        metadata,
        footer: vec![
            ("sigma_q", report.sigma_q),
            ("sigma_b", report.sigma_b),
            ("rel_diff", report.rel_diff),
            ("max_abs_a2", report.max_abs_a2),
            (
                "probability_bound_exceeded",
                if report.probability_bound_exceeded { 1.0 } else { 0.0 },
            ),
        ],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::parse_config;

    const PLANE: &str = "mode = \"plane\"\n[atom_initial]\nn = 1\nl = 0\nm = 0\n[geometry]\nq = [0.0, 1.0]\n[grid]\nnodes_per_axis = 48\nrefinement_levels = 2\n";

    #[test]
    fn plane_rows_match_oracle() {
        let out = run(&parse_config(PLANE).unwrap()).unwrap();
        assert_eq!(out.columns, vec!["theta", "q", "re_M", "im_M", "abs_M2", "err_est"]);
        assert_eq!(out.rows.len(), 2);
        assert!((out.rows[0][2] - 1.0).abs() < 1e-9);
        assert!((out.rows[1][2] - 0.64).abs() < 1e-6);
        assert!(out.rows[0][0].is_nan());
    }

    #[test]
    fn tolerance_breach_is_a_numerical_failure() {
        let text = PLANE.replace("nodes_per_axis = 48", "nodes_per_axis = 4") + "tolerance = 1e-14\n";
        let e = run(&parse_config(&text).unwrap()).unwrap_err();
        assert_eq!(e.exit_code(), 3, "{e}");
    }

    #[test]
    fn small_box_is_a_coverage_failure() {
        let text = PLANE.to_string() + "half_width = 5.0\n";
        let e = run(&parse_config(&text).unwrap()).unwrap_err();
        assert_eq!(e.exit_code(), 4, "{e}");
    }

    #[test]
    fn sweep_rows_follow_sweep_order() {
        let text = "mode = \"plane\"\n[atom_initial]\nn = 1\nl = 0\nm = 0\n[geometry]\nq = [0.5]\n[sweep]\nparameter = \"b\"\nvalues = [3.0, 0.0, -2.0]\n[grid]\nnodes_per_axis = 24\nrefinement_levels = 1\n";
        let out = run(&parse_config(text).unwrap()).unwrap();
        let sv: Vec<f64> = out.rows.iter().map(|r| r[0]).collect();
        assert_eq!(sv, vec![3.0, 0.0, -2.0]);
        // q along z, b along x: no phase
        for r in &out.rows {
            assert!((r[3] - out.rows[1][3]).abs() < 1e-12);
        }
    }

    #[test]
    fn metadata_records_effective_config() {
        let out = run(&parse_config(PLANE).unwrap()).unwrap();
        let back = parse_config(&out.metadata.config).unwrap();
        assert_eq!(back, parse_config(PLANE).unwrap());
        assert_eq!(out.metadata.grid.unwrap().nodes_per_axis, 48);
    }
}
