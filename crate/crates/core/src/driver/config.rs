//! Run configuration read from flat TOML files.
//!
//! A file names a preset and overrides any of its keys:
//!
//! ```toml
//! preset = "burgers1d_sin"
//! degree = 3
//! face_mode = "ae"
//! flux = "global_lf"
//! cells = 80
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::basis::{Correction, PointKind};
use crate::error::{config, Error, Result};
use crate::limiter::{LimiterConfig, LimiterKind};
use crate::lw_core::FaceMode;
use crate::numflux::{Dissipation, FluxKind};
use crate::rk_reference::RkScheme;

use super::presets::preset;
use super::{Discretization, TimeScheme};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub preset: String,
    pub degree: usize,
    pub points: PointKind,
    pub correction: Correction,
    pub dissipation: Dissipation,
    pub face_mode: FaceMode,
    pub flux: FluxKind,
    pub scheme: TimeScheme,
    /// Defaults to the per-degree choice of [`RkScheme::for_degree`].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rk: Option<RkScheme>,
    pub limiter: LimiterKind,
    pub tvb_m: f64,
    pub characteristic: bool,
    pub positivity: bool,
    pub eps: f64,
    /// Cells along x.
    pub cells: usize,
    /// Cells along y for 2-D presets; defaults to `cells`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells_y: Option<usize>,
    pub domain: [f64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain_y: Option<[f64; 2]>,
    pub final_time: f64,
    pub cfl_safety: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cfl_override: Option<f64>,
    pub dt_max: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_dir: Option<PathBuf>,
    /// Writes `solution_final.csv` when `output_dir` is set.
    pub write_solution: bool,
    /// Extra output times before `final_time`.
    #[serde(default)]
    pub snapshots: Vec<f64>,
}

impl RunConfig {
    /// Settings shared by every preset before its own overrides.
    pub(crate) fn base(preset: &str, domain: [f64; 2], final_time: f64) -> Self {
        let d = Discretization::new(3);
        let lim = LimiterConfig::default();
        RunConfig {
            preset: preset.to_string(),
            degree: d.degree,
            points: d.points,
            correction: d.correction,
            dissipation: d.dissipation,
            face_mode: d.face_mode,
            flux: d.flux,
            scheme: d.scheme,
            rk: None,
            limiter: lim.kind,
            tvb_m: lim.tvb_m,
            characteristic: lim.characteristic,
            positivity: lim.positivity,
            eps: lim.eps,
            cells: 40,
            cells_y: None,
            domain,
            domain_y: None,
            final_time,
            cfl_safety: d.cfl_safety,
            cfl_override: None,
            dt_max: d.dt_max,
            output_dir: None,
            write_solution: true,
            snapshots: Vec::new(),
        }
    }

    /// Parses TOML text, filling unspecified keys from the named preset.
    pub fn from_toml(text: &str) -> Result<Self> {
        let table: toml::Table = text.parse().map_err(|e: toml::de::Error| Error::Config(e.message().to_string()))?;
        let name = match table.get("preset") {
            Some(toml::Value::String(s)) => s.clone(),
            Some(_) => return config("`preset` must be a string"),
            None => return config("missing `preset` key"),
        };
        let defaults = preset(&name)?;
        let mut merged = match toml::Value::try_from(&defaults) {
            Ok(toml::Value::Table(t)) => t,
            _ => return config("preset defaults do not serialize to a table"),
        };
        for (k, v) in table {
            merged.insert(k, v);
        }
        let cfg: RunConfig = merged.try_into().map_err(|e: toml::de::Error| Error::Config(e.message().to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn limiter_config(&self) -> LimiterConfig {
        LimiterConfig {
            kind: self.limiter,
            tvb_m: self.tvb_m,
            characteristic: self.characteristic,
            positivity: self.positivity,
            eps: self.eps,
        }
    }

    pub fn set_limiter(&mut self, lim: LimiterConfig) {
        self.limiter = lim.kind;
        self.tvb_m = lim.tvb_m;
        self.characteristic = lim.characteristic;
        self.positivity = lim.positivity;
        self.eps = lim.eps;
    }

    pub fn discretization(&self) -> Discretization {
        Discretization {
            degree: self.degree,
            points: self.points,
            correction: self.correction,
            dissipation: self.dissipation,
            face_mode: self.face_mode,
            flux: self.flux,
            limiter: self.limiter_config(),
            scheme: self.scheme,
            rk: self.rk.or_else(|| RkScheme::for_degree(self.degree).ok()).unwrap_or(RkScheme::Rk65),
            cfl_safety: self.cfl_safety,
            cfl_override: self.cfl_override,
            dt_max: self.dt_max,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.discretization().validate()?;
        if self.cells == 0 || self.cells_y == Some(0) {
            return config("cell counts must be positive");
        }
        let ok = |d: [f64; 2]| d[0].is_finite() && d[1].is_finite() && d[1] > d[0];
        if !ok(self.domain) || !self.domain_y.map_or(true, ok) {
            return config("domain bounds must be finite and increasing");
        }
        if !(self.final_time >= 0.0 && self.final_time.is_finite()) {
            return config(format!("final_time must be nonnegative, got {}", self.final_time));
        }
        if self.snapshots.iter().any(|&t| !(0.0..=self.final_time).contains(&t)) {
            return config("snapshot times must lie in [0, final_time]");
        }
        Ok(())
    }

    pub fn cells_2d(&self) -> [usize; 2] {
        [self.cells, self.cells_y.unwrap_or(self.cells)]
    }
}
