//! Run configuration: a single JSON document with the physical parameters
//! and per-subcommand sweep settings. Every field has a default mirroring
//! the reference parameter set, so partial configs are valid.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use ptcavity_core::SystemParams64;

pub const UNITS_NOTE: &str =
    "frequencies/rates/couplings: MHz (angular); phases: rad; time: us; displacement: units where eta*x is MHz";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    Svg,
    Ascii,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BranchSweepCfg {
    /// Lower coupling bound, MHz. Defaults to the single-atom coupling.
    pub g_min: Option<f64>,
    /// Upper coupling bound, MHz. Defaults to sqrt(1e7) single-atom couplings.
    pub g_max: Option<f64>,
    pub count: usize,
    pub k: i32,
}

impl Default for BranchSweepCfg {
    fn default() -> Self {
        Self {
            g_min: None,
            g_max: None,
            count: 701,
            k: 0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PhaseMatchCfg {
    /// Coupling at which the matching phases are traced, MHz.
    pub g: f64,
    pub delta_min: f64,
    pub delta_max: f64,
    pub count: usize,
    pub k: i32,
}

impl Default for PhaseMatchCfg {
    fn default() -> Self {
        Self {
            g: 204.0,
            delta_min: -35_000.0,
            delta_max: 35_000.0,
            count: 701,
            k: 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum GainMapPreset {
    /// Coupling versus phase at resonance, logarithmic coupling axis.
    Fig4a,
    /// Detuning versus phase at G = 1 GHz.
    Fig4b,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GainMapCfg {
    pub preset: Option<GainMapPreset>,
    pub rows: Option<ptcavity_core::spectral::AxisSpec<f64>>,
    pub cols: Option<ptcavity_core::spectral::AxisSpec<f64>>,
    /// Mirror coordinate at which the inequality is evaluated. The
    /// displacement only shifts the detuning axis by eta*x.
    pub x: f64,
    pub resolution: usize,
}

impl Default for GainMapCfg {
    fn default() -> Self {
        Self {
            preset: Some(GainMapPreset::Fig4a),
            rows: None,
            cols: None,
            x: 0.0,
            resolution: 201,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HysteresisCfg {
    /// Coupling for the traced cycles, MHz.
    pub g: f64,
    pub k: i32,
    /// Detunings to trace, MHz.
    pub deltas: Vec<f64>,
    pub x_a_min: f64,
    pub x_a_max: f64,
    pub samples: usize,
}

impl Default for HysteresisCfg {
    fn default() -> Self {
        Self {
            g: 345.0,
            k: 0,
            deltas: vec![0.0, -1.5, 1.5],
            x_a_min: -4.0,
            x_a_max: 4.0,
            samples: 401,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulateCfg {
    pub a_re: f64,
    pub a_im: f64,
    pub b_re: f64,
    pub b_im: f64,
    pub x: f64,
    pub v: f64,
    /// Step, microseconds.
    pub dt: f64,
    /// Horizon, microseconds.
    pub t_max: f64,
    /// Record every n-th step.
    pub stride: usize,
    /// Freeze the atoms and drive the cavity with G sqrt(N) instead of
    /// integrating the full tripartite system.
    pub driven: bool,
}

impl Default for SimulateCfg {
    fn default() -> Self {
        // The step resolves the fastest rotation of the reference set
        // (delta = 32 GHz): dt <= 0.1 / max rate.
        Self {
            a_re: 1.0,
            a_im: 0.0,
            b_re: 0.0,
            b_im: 0.0,
            x: 0.0,
            v: 0.0,
            dt: 2e-6,
            t_max: 2.0,
            stride: 1000,
            driven: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub params: SystemParams64,
    pub out_dir: PathBuf,
    pub formats: Vec<OutputFormat>,
    pub seed: u64,
    pub branch_sweep: BranchSweepCfg,
    pub phase_match: PhaseMatchCfg,
    pub gain_map: GainMapCfg,
    pub hysteresis: HysteresisCfg,
    pub simulate: SimulateCfg,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            params: SystemParams64::reference(),
            out_dir: PathBuf::from("out"),
            formats: vec![OutputFormat::Csv, OutputFormat::Json],
            seed: 42,
            branch_sweep: BranchSweepCfg::default(),
            phase_match: PhaseMatchCfg::default(),
            gain_map: GainMapCfg::default(),
            hysteresis: HysteresisCfg::default(),
            simulate: SimulateCfg::default(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &std::path::Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let cfg: RunConfig =
            serde_json::from_str(&text).map_err(|e| format!("invalid config: {e}"))?;
        cfg.params.validate().map_err(|e| format!("invalid params: {e}"))?;
        Ok(cfg)
    }
}
