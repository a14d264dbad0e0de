//! Flat JSON run configuration.

use std::fs;
use std::path::Path;

use cavity_metrology::hamiltonians::SystemParams;
use cavity_metrology::metrology::{ProtocolConfig, Representation};
use cavity_metrology::composite::DEFAULT_N_MAX;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepresentationKind {
    SpinOnly,
    Composite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepAxis {
    NQubits,
    Phi,
    #[serde(rename = "T")]
    Duration,
    GOverDelta,
}

impl SweepAxis {
    pub fn column_name(self) -> &'static str {
        match self {
            SweepAxis::NQubits => "n_qubits",
            SweepAxis::Phi => "phi",
            SweepAxis::Duration => "T",
            SweepAxis::GOverDelta => "g_over_delta",
        }
    }
}

/// Everything a run needs, read from one flat JSON object.
///
/// The phase reference is either `omega_ref` or `phi` (the frame is then
/// solved for that phase); with neither, the frame tracks the shifted qubit
/// frequency and φ = 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub n_qubits: usize,
    pub b_z: f64,
    pub b_x: f64,
    pub lambda: f64,
    pub lambda_c: f64,
    pub omega_c: f64,
    #[serde(default)]
    pub kappa: f64,
    #[serde(default)]
    pub gamma: f64,

    #[serde(rename = "T", default = "default_duration")]
    pub duration: f64,
    #[serde(default)]
    pub omega_ref: Option<f64>,
    #[serde(default)]
    pub phi: Option<f64>,
    #[serde(default)]
    pub photon_number: usize,
    #[serde(default = "default_representation")]
    pub representation: RepresentationKind,
    #[serde(default = "default_n_max")]
    pub n_max: usize,
    /// Treat an undefined δλ (degeneracy point) as an error.
    #[serde(default = "default_true")]
    pub require_delta_lambda: bool,

    #[serde(default)]
    pub sweep_axis: Option<SweepAxis>,
    #[serde(default)]
    pub sweep_start: Option<f64>,
    #[serde(default)]
    pub sweep_stop: Option<f64>,
    #[serde(default)]
    pub sweep_steps: Option<usize>,
}

fn default_duration() -> f64 {
    1.0
}

fn default_representation() -> RepresentationKind {
    RepresentationKind::SpinOnly
}

fn default_n_max() -> usize {
    DEFAULT_N_MAX
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl SweepSpec {
    /// Inclusive, evenly spaced axis values.
    pub fn values(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let span = self.stop - self.start;
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| if i + 1 == self.steps { self.stop } else { self.start + span * i as f64 / last })
            .collect()
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| CliError::ReadConfig {
            path: path.to_owned(),
            source,
        })?;
        Self::from_json(&text).map_err(|e| match e {
            CliError::ParseConfig { source, .. } => CliError::ParseConfig {
                path: path.to_owned(),
                source,
            },
            other => other,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|source| CliError::ParseConfig {
            path: "<string>".into(),
            source,
        })?;
        if cfg.omega_ref.is_some() && cfg.phi.is_some() {
            return Err(CliError::Config("give at most one of omega_ref and phi".into()));
        }
        Ok(cfg)
    }

    pub fn params(&self) -> Result<SystemParams> {
        let p = SystemParams::new(self.n_qubits, self.b_z, self.b_x, self.lambda, self.lambda_c, self.omega_c)?
            .with_decay(self.kappa, self.gamma)?;
        Ok(p)
    }

    pub fn representation(&self) -> Representation {
        match self.representation {
            RepresentationKind::SpinOnly => Representation::SpinOnly,
            RepresentationKind::Composite => Representation::Composite { n_max: self.n_max },
        }
    }

    pub fn protocol_config(&self) -> Result<ProtocolConfig> {
        self.protocol_config_for(&self.params()?)
    }

    pub(crate) fn protocol_config_for(&self, params: &SystemParams) -> Result<ProtocolConfig> {
        let repr = self.representation();
        let cfg = match (self.omega_ref, self.phi) {
            (Some(w), _) => ProtocolConfig::new(*params, self.duration, w, self.photon_number, repr)?,
            (None, phi) => ProtocolConfig::at_phase(*params, self.duration, phi.unwrap_or(0.0), self.photon_number, repr)?,
        };
        Ok(cfg)
    }

    pub fn sweep(&self) -> Result<SweepSpec> {
        let missing = |key: &str| CliError::Config(format!("sweep needs `{key}`"));
        let spec = SweepSpec {
            axis: self.sweep_axis.ok_or_else(|| missing("sweep_axis"))?,
            start: self.sweep_start.ok_or_else(|| missing("sweep_start"))?,
            stop: self.sweep_stop.ok_or_else(|| missing("sweep_stop"))?,
            steps: self.sweep_steps.ok_or_else(|| missing("sweep_steps"))?,
        };
        if spec.steps < 1 {
            return Err(CliError::Config("sweep_steps must be at least 1".into()));
        }
        if !(spec.start.is_finite() && spec.stop.is_finite()) || spec.start > spec.stop {
            return Err(CliError::Config("sweep needs finite sweep_start <= sweep_stop".into()));
        }
        Ok(spec)
    }
}
