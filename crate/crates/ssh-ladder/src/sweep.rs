//! Batch sweeps: config parsing, CSV serialization and the run manifest.
//!
//! This is the engine behind the command-line tool.  A [`RunConfig`] (TOML,
//! strict keys) selects a mode, model parameters and up to two sweep axes;
//! [`execute`] produces the CSV text and [`run`] additionally writes the CSV
//! plus a manifest next to it.  Output ordering is row-major over the axes
//! and independent of the worker count.

use crate::bell::{chsh_scan, rotation_protocol, theta_grid, time_grid};
use crate::entanglement::{
    joint_number_distribution, number_entropy, operational_entanglement, EdgeSelection,
    EntanglementMeasure,
};
use crate::gaussian::{ladder_ground_state, thermal_correlations, ModeIndex};
use crate::model::{real_space_hamiltonian, Boundary, LadderParams, SiteType, SymmetryKind};
use crate::topology::{winding_green, AxisSpec, SweepParam, DEFAULT_NK};
use crate::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::{Path, PathBuf};

/// What a run computes at every grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    /// Winding number grid (alias: the `phase-diagram` subcommand).
    #[serde(alias = "phase-diagram")]
    Invariant,
    /// Operational entanglement map.
    #[serde(alias = "entanglement-map")]
    Entanglement,
    /// Number-entropy map.
    #[serde(alias = "number-entropy-map")]
    NumberEntropy,
    /// CHSH scan over θ on the ground state.
    Chsh,
    /// CHSH scan on the thermal state at inverse temperature `beta`.
    ThermalChsh,
    /// Rotation-protocol fidelity traces.
    Protocol,
}

fn default_j() -> f64 {
    1.0
}

/// Model parameters as they appear in a config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelConfig {
    pub m: usize,
    pub l: usize,
    pub deltas: Vec<f64>,
    pub z: f64,
    #[serde(default = "default_j")]
    pub j: f64,
    #[serde(default)]
    pub boundary: Boundary,
}

impl ModelConfig {
    pub fn to_params(&self) -> Result<LadderParams> {
        Ok(LadderParams::new(self.m, self.l, self.deltas.clone(), self.z)?
            .with_j(self.j)
            .with_boundary(self.boundary))
    }
}

/// One sweep axis; `param` is `"z"`, `"deltaN"` or tied legs `"deltaN_M"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisConfig {
    pub param: String,
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

/// Evenly spaced scalar grid (θ scans).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

/// Time grid `[0, t_max]` for the protocol mode.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeConfig {
    pub t_max: f64,
    pub steps: usize,
}

/// One edge mode by physical label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModeSpec {
    pub site: SiteType,
    pub leg: usize,
    pub cell: usize,
}

impl ModeSpec {
    fn resolve(&self, params: &LadderParams) -> Result<ModeIndex> {
        if self.leg == 0 || self.leg > params.m || self.cell == 0 || self.cell > params.l {
            return Err(Error::InvalidParams(format!(
                "edge mode (leg {}, cell {}) out of range for M = {}, L = {}",
                self.leg, self.cell, params.m, params.l
            )));
        }
        Ok(ModeIndex::new(params, self.site, self.leg, self.cell))
    }
}

/// Override of the default edge-mode choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeConfig {
    pub a1: ModeSpec,
    pub a2: ModeSpec,
    pub b1: ModeSpec,
    pub b2: ModeSpec,
}

fn default_nk() -> usize {
    DEFAULT_NK
}

/// Complete description of one sweep run.  Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub mode: Mode,
    pub model: ModelConfig,
    /// Up to two swept parameters; row-major output order.
    #[serde(default)]
    pub axes: Vec<AxisConfig>,
    #[serde(default)]
    pub symmetry: SymmetryKind,
    #[serde(default = "default_nk")]
    pub n_k: usize,
    /// Inverse temperature; required by `thermal-chsh`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    /// Rotation-drive strength; required by `protocol`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    /// θ grid for the CHSH modes; defaults to 201 points on [0, π/2].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theta: Option<GridConfig>,
    /// Time grid for the protocol; defaults to 501 points on [0, 1].
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub time: Option<TimeConfig>,
    /// Edge-mode override; defaults to `a_1^1, a_1^3, b_L^1, b_L^3`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge: Option<EdgeConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// Worker threads; defaults to all available cores.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub workers: Option<usize>,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: RunConfig =
            toml::from_str(text).map_err(|e| Error::InvalidParams(format!("config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidParams(format!("config {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    fn needs_edge(&self) -> bool {
        !matches!(self.mode, Mode::Invariant)
    }

    /// Structural checks beyond parsing.  Does not run any sweep point.
    pub fn validate(&self) -> Result<()> {
        let params = self.model.to_params()?;
        if self.axes.len() > 2 {
            return Err(Error::InvalidParams("at most two sweep axes".into()));
        }
        for axis in &self.axes {
            if axis.steps == 0 {
                return Err(Error::InvalidParams(format!("axis {}: steps must be >= 1", axis.param)));
            }
            let param = SweepParam::parse(&axis.param).map_err(Error::InvalidParams)?;
            // leg-range check
            let mut probe = params.clone();
            param.apply(&mut probe, axis.min)?;
        }
        if self.n_k < 4 {
            return Err(Error::InvalidParams("n_k must be at least 4".into()));
        }
        if let Some(g) = &self.theta {
            if g.steps == 0 {
                return Err(Error::InvalidParams("theta grid: steps must be >= 1".into()));
            }
        }
        if let Some(t) = &self.time {
            if t.steps < 2 || t.t_max <= 0.0 {
                return Err(Error::InvalidParams("time grid: need t_max > 0 and steps >= 2".into()));
            }
        }
        match self.mode {
            Mode::ThermalChsh => {
                let beta = self.beta.ok_or_else(|| {
                    Error::InvalidParams("thermal-chsh requires beta".into())
                })?;
                if beta < 0.0 {
                    return Err(Error::InvalidParams("beta must be >= 0".into()));
                }
            }
            Mode::Protocol => {
                if !self.axes.is_empty() {
                    return Err(Error::InvalidParams("protocol does not support sweep axes".into()));
                }
            }
            _ => {}
        }
        if self.needs_edge() {
            self.edge_selection(&params)?;
        }
        Ok(())
    }

    /// Fill every defaultable field so the manifest records the exact run.
    pub fn resolved(&self) -> RunConfig {
        let mut cfg = self.clone();
        if matches!(cfg.mode, Mode::Chsh | Mode::ThermalChsh) && cfg.theta.is_none() {
            cfg.theta = Some(GridConfig { min: 0.0, max: PI, steps: 201 });
        }
        if matches!(cfg.mode, Mode::Protocol) {
            if cfg.time.is_none() {
                cfg.time = Some(TimeConfig { t_max: 20.0, steps: 200 });
            }
            if cfg.kappa.is_none() {
                cfg.kappa = Some(10.0);
            }
        }
        if cfg.workers.is_none() {
            cfg.workers = Some(rayon::current_num_threads());
        }
        cfg
    }

    fn axis_specs(&self) -> Result<Vec<AxisSpec>> {
        self.axes
            .iter()
            .map(|a| {
                Ok(AxisSpec::new(
                    SweepParam::parse(&a.param).map_err(Error::InvalidParams)?,
                    a.min,
                    a.max,
                    a.steps,
                ))
            })
            .collect()
    }

    fn edge_selection(&self, params: &LadderParams) -> Result<EdgeSelection> {
        match &self.edge {
            None => EdgeSelection::edge_default(params),
            Some(e) => EdgeSelection::new(
                e.a1.resolve(params)?,
                e.a2.resolve(params)?,
                e.b1.resolve(params)?,
                e.b2.resolve(params)?,
            ),
        }
    }
}

/// Shortest round-trip float formatting (Rust's default `Display`).
fn fmt(x: f64) -> String {
    format!("{x}")
}

fn csv(header: &[&str], rows: Vec<Vec<String>>) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// Row-major cartesian product of the axis values.  No axes gives one empty
/// combination, so every mode runs at least once.
fn combos(specs: &[AxisSpec]) -> Vec<Vec<f64>> {
    let values: Vec<Vec<f64>> = specs.iter().map(|s| s.values()).collect();
    let total: usize = values.iter().map(|v| v.len()).product();
    (0..total)
        .map(|mut idx| {
            let mut combo = vec![0.0; values.len()];
            for (d, v) in values.iter().enumerate().rev() {
                combo[d] = v[idx % v.len()];
                idx /= v.len();
            }
            combo
        })
        .collect()
}

fn apply_combo(template: &LadderParams, specs: &[AxisSpec], combo: &[f64]) -> Result<LadderParams> {
    let mut p = template.clone();
    for (spec, &v) in specs.iter().zip(combo) {
        spec.param.apply(&mut p, v)?;
    }
    Ok(p)
}

/// Run the sweep described by `config` and return the CSV text.  Per-point
/// failures (gapless spectra, inapplicable symmetry, empty sectors) become
/// `NA` cells; only setup problems are errors.
pub fn execute(config: &RunConfig) -> Result<String> {
    config.validate()?;
    let cfg = config.resolved();
    match cfg.workers {
        Some(w) if w != rayon::current_num_threads() => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::InvalidParams(format!("worker pool: {e}")))?;
            pool.install(|| execute_inner(&cfg))
        }
        _ => execute_inner(&cfg),
    }
}

fn execute_inner(cfg: &RunConfig) -> Result<String> {
    let template = cfg.model.to_params()?;
    let specs = cfg.axis_specs()?;
    let points = combos(&specs);
    let axis_names: Vec<String> = specs.iter().map(|s| s.param.name()).collect();

    let point_rows = |f: &(dyn Fn(&LadderParams) -> Vec<Vec<String>> + Sync)| -> Vec<Vec<String>> {
        points
            .par_iter()
            .map(|combo| {
                let prefix: Vec<String> = combo.iter().map(|&v| fmt(v)).collect();
                let body = match apply_combo(&template, &specs, combo) {
                    Ok(p) => f(&p),
                    Err(_) => vec![vec!["NA".into()]],
                };
                body.into_iter()
                    .map(|mut row| {
                        let mut full = prefix.clone();
                        full.append(&mut row);
                        full
                    })
                    .collect::<Vec<_>>()
            })
            .flatten()
            .collect()
    };

    match cfg.mode {
        Mode::Invariant => {
            let header: Vec<&str> = axis_names
                .iter()
                .map(String::as_str)
                .chain(["i", "raw", "residual", "gap"])
                .collect();
            let rows = point_rows(&|p| {
                vec![match winding_green(p, cfg.symmetry, cfg.n_k) {
                    Ok(r) => {
                        vec![r.value.to_string(), fmt(r.raw), fmt(r.residual), fmt(r.gap)]
                    }
                    Err(_) => vec!["NA".into(), "NA".into(), "NA".into(), "NA".into()],
                }]
            });
            Ok(csv(&header, rows))
        }
        Mode::Entanglement | Mode::NumberEntropy => {
            let extra: &[&str] = if cfg.mode == Mode::Entanglement {
                &["p11", "e_neg", "e_f"]
            } else {
                &["p11", "s_n"]
            };
            let header: Vec<&str> =
                axis_names.iter().map(String::as_str).chain(extra.iter().copied()).collect();
            let mode = cfg.mode;
            let edge_cfg = cfg.edge;
            let rows = point_rows(&move |p| {
                let sel = match &edge_cfg {
                    None => EdgeSelection::edge_default(p),
                    Some(e) => (|| {
                        EdgeSelection::new(
                            e.a1.resolve(p)?,
                            e.a2.resolve(p)?,
                            e.b1.resolve(p)?,
                            e.b2.resolve(p)?,
                        )
                    })(),
                };
                let sel = match sel {
                    Ok(s) => s,
                    Err(_) => return vec![vec!["NA".into(); extra.len()]],
                };
                let c = ladder_ground_state(p);
                let dist = joint_number_distribution(&c, &sel);
                let p11 = dist.p[1][1];
                vec![if mode == Mode::Entanglement {
                    let e_neg = operational_entanglement(&c, &sel, EntanglementMeasure::Negativity);
                    let e_f = operational_entanglement(&c, &sel, EntanglementMeasure::Formation);
                    vec![fmt(p11), fmt(e_neg), fmt(e_f)]
                } else {
                    vec![fmt(p11), fmt(number_entropy(&dist))]
                }]
            });
            Ok(csv(&header, rows))
        }
        Mode::Chsh | Mode::ThermalChsh => {
            let g = cfg.theta.as_ref().expect("resolved");
            let thetas = theta_grid(g.min, g.max, g.steps);
            let header: Vec<&str> =
                axis_names.iter().map(String::as_str).chain(["theta", "sigma"]).collect();
            let beta = cfg.beta;
            let thermal = cfg.mode == Mode::ThermalChsh;
            let edge_cfg = cfg.edge;
            let thetas_ref = &thetas;
            let rows = point_rows(&move |p| {
                let sel = match &edge_cfg {
                    None => EdgeSelection::edge_default(p),
                    Some(e) => (|| {
                        EdgeSelection::new(
                            e.a1.resolve(p)?,
                            e.a2.resolve(p)?,
                            e.b1.resolve(p)?,
                            e.b2.resolve(p)?,
                        )
                    })(),
                };
                let sel = match sel {
                    Ok(s) => s,
                    Err(_) => {
                        return thetas_ref.iter().map(|&t| vec![fmt(t), "NA".into()]).collect()
                    }
                };
                let h = real_space_hamiltonian(p);
                let c = if thermal {
                    thermal_correlations(&h, beta.expect("validated"))
                } else {
                    ladder_ground_state(p)
                };
                chsh_scan(&c, &sel, thetas_ref)
                    .into_iter()
                    .map(|(t, s)| vec![fmt(t), s.map(fmt).unwrap_or_else(|| "NA".into())])
                    .collect()
            });
            Ok(csv(&header, rows))
        }
        Mode::Protocol => {
            let tg = cfg.time.as_ref().expect("resolved");
            let times = time_grid(tg.t_max, tg.steps);
            let sel = cfg.edge_selection(&template)?;
            let res = rotation_protocol(&template, &sel, cfg.kappa.expect("validated"), &times)?;
            let rows = res
                .times
                .iter()
                .zip(res.f1.iter().zip(&res.f2))
                .map(|(&t, (&f1, &f2))| vec![fmt(t), fmt(f1), fmt(f2)])
                .collect();
            Ok(csv(&["t", "f1", "f2"], rows))
        }
    }
}

#[derive(Serialize)]
struct Manifest<'a> {
    version: &'a str,
    wall_time_seconds: f64,
    config: &'a RunConfig,
}

/// Run the sweep and write the CSV plus a `<out>.manifest.toml` recording the
/// fully resolved config, tool version and wall time.  Returns the CSV path.
pub fn run(config: &RunConfig) -> Result<PathBuf> {
    let start = std::time::Instant::now();
    let csv_text = execute(config)?;
    let out = config
        .output
        .clone()
        .ok_or_else(|| Error::InvalidParams("no output path set".into()))?;
    let io_err = |e: std::io::Error| Error::InvalidParams(format!("write {}: {e}", out.display()));
    std::fs::write(&out, csv_text).map_err(io_err)?;
    let manifest = Manifest {
        version: env!("CARGO_PKG_VERSION"),
        wall_time_seconds: start.elapsed().as_secs_f64(),
        config: &config.resolved(),
    };
    let manifest_text = toml::to_string_pretty(&manifest)
        .map_err(|e| Error::InvalidParams(format!("manifest: {e}")))?;
    let mut manifest_path = out.clone().into_os_string();
    manifest_path.push(".manifest.toml");
    std::fs::write(PathBuf::from(&manifest_path), manifest_text).map_err(io_err)?;
    Ok(out)
}
