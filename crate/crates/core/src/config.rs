//! TOML run configuration for the command-line front end.
//!
//! Lengths are read in the unit named by `[units] length` and converted to
//! bohr when a run starts, so a parsed config re-emits exactly as written.

use serde::{Deserialize, Serialize};

use crate::atom::{AtomicState, DEFAULT_BOX_SCALE, DEFAULT_DENSITY_FLOOR};
use crate::beam::BeamParams;
use crate::error::{Error, Result};
use crate::quadrature::{AxisMap, GridSpec};
use crate::vec3::Vec3;

/// Bohr radius in metres.
pub const BOHR_IN_METRES: f64 = 5.29177210903e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Plane,
    Vortex,
    TvScan,
    ImpactProfile,
    Xsec,
}

impl Mode {
    pub const ALL: [Mode; 5] = [Mode::Plane, Mode::Vortex, Mode::TvScan, Mode::ImpactProfile, Mode::Xsec];

    pub fn name(self) -> &'static str {
        match self {
            Mode::Plane => "plane",
            Mode::Vortex => "vortex",
            Mode::TvScan => "tv_scan",
            Mode::ImpactProfile => "impact_profile",
            Mode::Xsec => "xsec",
        }
    }

    pub fn from_name(name: &str) -> Option<Mode> {
        Mode::ALL.into_iter().find(|m| m.name() == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepParam {
    ZR,
    Ell,
    P,
    B,
    Theta,
}

impl SweepParam {
    pub fn name(self) -> &'static str {
        match self {
            SweepParam::ZR => "z_r",
            SweepParam::Ell => "ell",
            SweepParam::P => "p",
            SweepParam::B => "b",
            SweepParam::Theta => "theta",
        }
    }

    fn is_length(self) -> bool {
        matches!(self, SweepParam::ZR | SweepParam::B)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthUnit {
    #[default]
    Bohr,
    M,
    Nm,
}

impl LengthUnit {
    /// Bohr per unit.
    pub fn to_bohr(self) -> f64 {
        match self {
            LengthUnit::Bohr => 1.0,
            LengthUnit::M => 1.0 / BOHR_IN_METRES,
            LengthUnit::Nm => 1e-9 / BOHR_IN_METRES,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LengthUnit::Bohr => "bohr",
            LengthUnit::M => "m",
            LengthUnit::Nm => "nm",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ImpactSource {
    #[default]
    Vortex,
    Gaussian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormFactorKind {
    #[default]
    Plane,
    Vortex,
}

/// Scattering angles (radians) or elastic momentum transfers (1/length).
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<Vec<f64>>,
    #[serde(default = "default_azimuth")]
    pub azimuth: f64,
}

fn default_azimuth() -> f64 {
    std::f64::consts::FRAC_PI_2
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeometryPoint {
    Theta(f64),
    Q(f64),
}

impl GeometryConfig {
    pub fn points(&self) -> Vec<GeometryPoint> {
        match (&self.theta, &self.q) {
            (_, Some(q)) => q.iter().map(|&v| GeometryPoint::Q(v)).collect(),
            (Some(t), None) => t.iter().map(|&v| GeometryPoint::Theta(v)).collect(),
            (None, None) => vec![GeometryPoint::Theta(0.0)],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub parameter: SweepParam,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    #[serde(default = "default_nodes")]
    pub nodes_per_axis: usize,
    #[serde(default = "default_levels")]
    pub refinement_levels: usize,
    /// Cube half-width; by default the box follows the states' support.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub half_width: Option<f64>,
    #[serde(default = "default_floor")]
    pub density_floor: f64,
    #[serde(default = "default_box_scale")]
    pub box_scale: f64,
    #[serde(default)]
    pub axis_map: AxisMap,
    /// Largest acceptable absolute error estimate.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

fn default_nodes() -> usize {
    GridSpec::DEFAULT_NODES
}
fn default_levels() -> usize {
    GridSpec::DEFAULT_LEVELS
}
fn default_floor() -> f64 {
    DEFAULT_DENSITY_FLOOR
}
fn default_box_scale() -> f64 {
    DEFAULT_BOX_SCALE
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            nodes_per_axis: default_nodes(),
            refinement_levels: default_levels(),
            half_width: None,
            density_floor: default_floor(),
            box_scale: default_box_scale(),
            axis_map: AxisMap::default(),
            tolerance: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path: Option<String>,
    #[serde(default)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitsConfig {
    #[serde(default)]
    pub length: LengthUnit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TvConfig {
    /// `M_p` is evaluated with `z_R` multiplied by this factor.
    #[serde(default = "default_reference_factor")]
    pub reference_factor: f64,
    /// Atom offset along x in units of the incoming waist.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_in_waists: Option<f64>,
}

fn default_reference_factor() -> f64 {
    1e4
}

impl Default for TvConfig {
    fn default() -> Self {
        TvConfig {
            reference_factor: default_reference_factor(),
            b_in_waists: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImpactConfig {
    #[serde(default)]
    pub source: ImpactSource,
    /// Width of the Gaussian source (length).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma: Option<f64>,
    /// Wavenumber of the Gaussian source (1/length); defaults to the beam's.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<f64>,
    /// Impact parameter (length) out to which the q-grid resolves `a(b)`.
    #[serde(default = "default_b_target")]
    pub b_target: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_radial_nodes: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q_azimuthal_nodes: Option<usize>,
    #[serde(default = "default_polarization")]
    pub polarization: Vec3,
}

fn default_b_target() -> f64 {
    8.0
}

fn default_polarization() -> Vec3 {
    Vec3::X
}

impl Default for ImpactConfig {
    fn default() -> Self {
        ImpactConfig {
            source: ImpactSource::default(),
            sigma: None,
            k: None,
            b_target: default_b_target(),
            q_radial_nodes: None,
            q_azimuthal_nodes: None,
            polarization: default_polarization(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XsecConfig {
    #[serde(default)]
    pub form_factor: FormFactorKind,
    #[serde(default = "default_polarization")]
    pub polarization: Vec3,
}

impl Default for XsecConfig {
    fn default() -> Self {
        XsecConfig {
            form_factor: FormFactorKind::default(),
            polarization: default_polarization(),
        }
    }
}

/// A complete run description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Mode,
    pub atom_initial: AtomicState,
    /// Defaults to `atom_initial`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub atom_final: Option<AtomicState>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beam_in: Option<BeamParams>,
    /// Defaults to `beam_in`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beam_out: Option<BeamParams>,
    #[serde(default)]
    pub geometry: GeometryConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub output: OutputConfig,
    #[serde(default)]
    pub units: UnitsConfig,
    #[serde(default)]
    pub tv: TvConfig,
    #[serde(default)]
    pub impact: ImpactConfig,
    #[serde(default)]
    pub xsec: XsecConfig,
}

fn config_error(text: Option<&str>, key: &str, message: impl Into<String>) -> Error {
    Error::Config {
        key: Some(key.to_string()),
        line: text.and_then(|t| key_line(t, key)),
        message: message.into(),
    }
}

/// Line (1-based) of `section.key`, or of `[section]` when the key is absent.
pub fn key_line(text: &str, path: &str) -> Option<usize> {
    let (section, key) = match path.split_once('.') {
        Some((s, k)) => (Some(s), k),
        None => (None, path),
    };
    let mut current: Option<String> = None;
    let mut header_line = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if let Some(h) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            current = Some(h.trim().to_string());
            if section == Some(h.trim()) || (section.is_none() && h.trim() == key) {
                header_line = Some(i + 1);
            }
            continue;
        }
        let Some((k, _)) = line.split_once('=') else { continue };
        if k.trim() == key && current.as_deref() == section {
            return Some(i + 1);
        }
    }
    header_line
}

fn from_toml_error(text: &str, e: &toml::de::Error) -> Error {
    let message = e.message().trim().to_string();
    let line = e
        .span()
        .map(|s| text[..s.start.min(text.len())].matches('\n').count() + 1);
    let section = line.and_then(|l| {
        text.lines()
            .take(l)
            .filter_map(|x| x.trim().strip_prefix('[').and_then(|x| x.split(']').next()))
            .map(|x| x.trim().to_string())
            .last()
    });
    let field = message.split('`').nth(1).map(str::to_string).or_else(|| {
        let l = line?;
        let content = text.lines().nth(l - 1)?;
        content.split_once('=').map(|(k, _)| k.trim().to_string())
    });
    let key = match (section, field) {
        (Some(s), Some(f)) => Some(format!("{s}.{f}")),
        (None, Some(f)) => Some(f),
        (Some(s), None) => Some(s),
        (None, None) => None,
    };
    Error::Config { key, line, message }
}

/// Parses and validates a config document.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let config: RunConfig = toml::from_str(text).map_err(|e| from_toml_error(text, &e))?;
    config.validate_with(Some(text))?;
    Ok(config)
}

/// Serializes a config back to TOML.
pub fn emit(config: &RunConfig) -> Result<String> {
    toml::to_string(config).map_err(|e| Error::Config {
        key: None,
        line: None,
        message: e.to_string(),
    })
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.validate_with(None)
    }

    fn validate_with(&self, text: Option<&str>) -> Result<()> {
        let err = |key: &str, msg: String| config_error(text, key, msg);
        let needs_beam = match self.mode {
            Mode::Plane => false,
            Mode::Vortex | Mode::TvScan | Mode::Xsec => true,
            Mode::ImpactProfile => self.impact.source == ImpactSource::Vortex,
        };
        if needs_beam && self.beam_in.is_none() {
            return Err(err(
                "beam_in",
                format!("mode {} needs a [beam_in] section", self.mode.name()),
            ));
        }
        if self.beam_out.is_some() && self.beam_in.is_none() {
            return Err(err("beam_out", "[beam_out] given without [beam_in]".into()));
        }

        let g = &self.geometry;
        if g.theta.is_some() && g.q.is_some() {
            return Err(err(
                "geometry.q",
                "give either geometry.theta or geometry.q, not both".into(),
            ));
        }
        if let Some(t) = &g.theta {
            if t.is_empty() {
                return Err(err("geometry.theta", "angle list is empty".into()));
            }
            if let Some(bad) = t.iter().find(|t| !(0.0..=std::f64::consts::PI).contains(*t)) {
                return Err(err("geometry.theta", format!("angle {bad} outside [0, π]")));
            }
            if self.beam_in.is_none() {
                return Err(err(
                    "geometry.theta",
                    "angles need a beam to fix the wavenumber; use geometry.q".into(),
                ));
            }
        }
        if let Some(q) = &g.q {
            if q.is_empty() {
                return Err(err("geometry.q", "momentum-transfer list is empty".into()));
            }
            if let Some(bad) = q.iter().find(|q| !(q.is_finite() && **q >= 0.0)) {
                return Err(err(
                    "geometry.q",
                    format!("momentum transfer {bad} must be finite and non-negative"),
                ));
            }
            if let Some(b) = &self.beam_in {
                let k = 2.0 * std::f64::consts::PI / b.wavelength();
                if let Some(bad) = q.iter().find(|q| **q > 2.0 * k) {
                    return Err(err(
                        "geometry.q",
                        format!("momentum transfer {bad} exceeds 2k = {}", 2.0 * k),
                    ));
                }
                if self.beam_out.is_some_and(|o| o.wavelength() != b.wavelength()) {
                    return Err(err("geometry.q", "momentum-transfer lists need elastic beams".into()));
                }
            }
        }
        if !g.azimuth.is_finite() {
            return Err(err("geometry.azimuth", "azimuth must be finite".into()));
        }

        self.validate_sweep(text)?;

        let gr = &self.grid;
        if gr.nodes_per_axis < 4 || !gr.nodes_per_axis.is_multiple_of(2) {
            return Err(err(
                "grid.nodes_per_axis",
                format!("must be even and at least 4, got {}", gr.nodes_per_axis),
            ));
        }
        if gr.refinement_levels < 1 {
            return Err(err("grid.refinement_levels", "must be at least 1".into()));
        }
        if let Some(h) = gr.half_width {
            if !(h > 0.0 && h.is_finite()) {
                return Err(err("grid.half_width", format!("must be positive, got {h}")));
            }
        }
        if !(gr.density_floor > 0.0 && gr.density_floor <= 1.0) {
            return Err(err(
                "grid.density_floor",
                format!("must lie in (0, 1], got {}", gr.density_floor),
            ));
        }
        if !(gr.box_scale >= 1.0 && gr.box_scale.is_finite()) {
            return Err(err(
                "grid.box_scale",
                format!("must be at least 1, got {}", gr.box_scale),
            ));
        }
        if let Some(t) = gr.tolerance {
            if !(t > 0.0) {
                return Err(err("grid.tolerance", format!("must be positive, got {t}")));
            }
        }

        if !(self.tv.reference_factor > 1.0 && self.tv.reference_factor.is_finite()) {
            return Err(err("tv.reference_factor", "must exceed 1".into()));
        }
        if let Some(b) = self.tv.b_in_waists {
            if !b.is_finite() {
                return Err(err("tv.b_in_waists", "must be finite".into()));
            }
        }

        let im = &self.impact;
        if self.mode == Mode::ImpactProfile {
            if im.source == ImpactSource::Gaussian {
                if !im.sigma.is_some_and(|s| s > 0.0 && s.is_finite()) {
                    return Err(err("impact.sigma", "the Gaussian source needs a positive sigma".into()));
                }
                if im.k.is_none() && self.beam_in.is_none() {
                    return Err(err(
                        "impact.k",
                        "the Gaussian source needs impact.k or a [beam_in]".into(),
                    ));
                }
            }
            if let Some(k) = im.k {
                if !(k > 0.0 && k.is_finite()) {
                    return Err(err("impact.k", format!("must be positive, got {k}")));
                }
            }
            if !(im.b_target > 0.0 && im.b_target.is_finite()) {
                return Err(err("impact.b_target", "must be positive".into()));
            }
            for (key, v) in [
                ("impact.q_radial_nodes", im.q_radial_nodes),
                ("impact.q_azimuthal_nodes", im.q_azimuthal_nodes),
            ] {
                if v == Some(0) {
                    return Err(err(key, "must be positive".into()));
                }
            }
            if (im.polarization.norm() - 1.0).abs() > 1e-12 {
                return Err(err("impact.polarization", "must be a unit vector".into()));
            }
            if self
                .beam_out
                .is_some_and(|o| Some(o.wavelength()) != self.beam_in.map(|b| b.wavelength()))
            {
                return Err(err("beam_out", "impact profiles need elastic beams".into()));
            }
        }
        if self.mode == Mode::Xsec && (self.xsec.polarization.norm() - 1.0).abs() > 1e-12 {
            return Err(err("xsec.polarization", "must be a unit vector".into()));
        }
        if self.mode == Mode::TvScan && self.geometry.points().len() != 1 {
            return Err(err(
                "geometry",
                "tv_scan takes a single scattering angle or momentum transfer".into(),
            ));
        }
        Ok(())
    }

    fn validate_sweep(&self, text: Option<&str>) -> Result<()> {
        let err = |key: &str, msg: String| config_error(text, key, msg);
        let Some(sweep) = &self.sweep else {
            if self.mode == Mode::TvScan {
                return Err(err("sweep", "tv_scan needs a [sweep] section".into()));
            }
            return Ok(());
        };
        use SweepParam::*;
        let allowed: &[SweepParam] = match self.mode {
            Mode::Plane => &[B, Theta],
            Mode::Vortex | Mode::TvScan => &[ZR, Ell, P, B, Theta],
            Mode::Xsec => match self.xsec.form_factor {
                FormFactorKind::Plane => &[B, Theta],
                FormFactorKind::Vortex => &[ZR, Ell, P, B, Theta],
            },
            Mode::ImpactProfile => &[],
        };
        if !allowed.contains(&sweep.parameter) {
            let names: Vec<_> = allowed.iter().map(|p| p.name()).collect();
            return Err(err(
                "sweep.parameter",
                format!(
                    "parameter {} is not an input of mode {} (allowed: {})",
                    sweep.parameter.name(),
                    self.mode.name(),
                    if names.is_empty() {
                        "none".to_string()
                    } else {
                        names.join(", ")
                    }
                ),
            ));
        }
        if sweep.values.is_empty() {
            return Err(err("sweep.values", "value list is empty".into()));
        }
        for &v in &sweep.values {
            let ok = match sweep.parameter {
                ZR => v > 0.0 && v.is_finite(),
                Ell => v.fract() == 0.0 && v.abs() <= 64.0,
                P => v.fract() == 0.0 && (0.0..=64.0).contains(&v),
                B => v.is_finite(),
                Theta => (0.0..=std::f64::consts::PI).contains(&v),
            };
            if !ok {
                return Err(err(
                    "sweep.values",
                    format!("value {v} is not valid for parameter {}", sweep.parameter.name()),
                ));
            }
        }
        if sweep.parameter == Theta && self.geometry.points().len() != 1 {
            return Err(err("geometry", "an angle sweep takes a single geometry entry".into()));
        }
        if sweep.parameter == Theta && self.geometry.q.is_some() {
            return Err(err(
                "geometry.q",
                "an angle sweep conflicts with a momentum-transfer list".into(),
            ));
        }
        if sweep.parameter == B && self.tv.b_in_waists.is_some() {
            return Err(err("tv.b_in_waists", "conflicts with an impact-parameter sweep".into()));
        }
        Ok(())
    }

    pub fn atom_final(&self) -> AtomicState {
        self.atom_final.unwrap_or(self.atom_initial)
    }

    pub fn beam_out(&self) -> Option<BeamParams> {
        self.beam_out.or(self.beam_in)
    }

    /// Incoming beam with lengths converted to bohr.
    pub fn beam_in_bohr(&self) -> Result<Option<BeamParams>> {
        self.beam_in.map(|b| beam_to_bohr(&b, self.units.length)).transpose()
    }

    pub fn beam_out_bohr(&self) -> Result<Option<BeamParams>> {
        self.beam_out().map(|b| beam_to_bohr(&b, self.units.length)).transpose()
    }

    pub fn sweep_value_to_bohr(&self, param: SweepParam, v: f64) -> f64 {
        if param.is_length() {
            v * self.units.length.to_bohr()
        } else {
            v
        }
    }
}

fn beam_to_bohr(b: &BeamParams, unit: LengthUnit) -> Result<BeamParams> {
    let s = unit.to_bohr();
    BeamParams::new(b.wavelength() * s, b.rayleigh_range() * s, b.p(), b.ell())
}

/// Commented starting point for a mode.
pub fn template(mode: Mode) -> String {
    let head = format!(
        "# vortexff run configuration ({})\nmode = \"{}\"\n",
        mode.name(),
        mode.name()
    );
    let atom =
        "\n[atom_initial]\nn = 1\nl = 0\nm = 0\ncenter = [0.0, 0.0, 0.0]\n\n# [atom_final] defaults to atom_initial\n";
    let beam = "\n[beam_in]\nwavelength = 100.0\nrayleigh_range = 10000.0\np = 0\nell = 1\n\n# [beam_out] defaults to beam_in\n";
    let grid = "\n[grid]\nnodes_per_axis = 48\nrefinement_levels = 3\n# half_width = 25.0\n# tolerance = 1e-8\n";
    let output = "\n[output]\nformat = \"csv\"\n# path = \"out.csv\"\n\n[units]\nlength = \"bohr\"\n";
    let body = match mode {
        Mode::Plane => "\n[geometry]\nq = [0.1, 0.5, 1.0, 2.0, 5.0]\n".to_string(),
        Mode::Vortex => format!("{beam}\n[beam_out]\nwavelength = 100.0\nrayleigh_range = 10000.0\np = 0\nell = -1\n\n[geometry]\ntheta = [0.01]\n")
            .replacen("\n# [beam_out] defaults to beam_in\n", "", 1),
        Mode::TvScan => format!(
            "{beam}\n[geometry]\ntheta = [0.0]\n\n[sweep]\nparameter = \"z_r\"\nvalues = [1000.0, 1778.0, 3162.0, 5623.0, 10000.0]\n\n[tv]\nreference_factor = 10000.0\nb_in_waists = 0.5\n"
        ),
        Mode::ImpactProfile => format!(
            "{beam}\n[impact]\nsource = \"vortex\"\nb_target = 8.0\npolarization = [1.0, 0.0, 0.0]\n# source = \"gaussian\" needs sigma and k\n"
        )
        .replace("wavelength = 100.0", "wavelength = 3.0")
        .replace("rayleigh_range = 10000.0", "rayleigh_range = 100.0"),
        Mode::Xsec => format!(
            "{beam}\n[geometry]\ntheta = [0.1, 0.5, 1.0, 1.5]\n\n[xsec]\nform_factor = \"plane\"\npolarization = [1.0, 0.0, 0.0]\n"
        ),
    };
    format!("{head}{atom}{body}{grid}{output}")
}
