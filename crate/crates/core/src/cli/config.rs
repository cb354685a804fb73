use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::args::{parse_coefficients, Format, GridSpec, OutputArgs, PotentialArgs};
use crate::equilibrium::Potential;
use crate::error::Result;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PotentialConfig {
    pub coefficients: Vec<f64>,
    pub hard_edge: bool,
    pub alpha: f64,
}

impl PotentialConfig {
    pub fn from_args(p: &PotentialArgs) -> Result<Self> {
        let coefficients = parse_coefficients(&p.potential)?;
        let cfg = Self {
            coefficients,
            hard_edge: p.hard_edge,
            alpha: p.alpha,
        };
        cfg.build()?;
        Ok(cfg)
    }

    pub fn build(&self) -> Result<Potential> {
        Potential::new(self.coefficients.clone(), self.hard_edge, self.alpha)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleConfig {
    pub beta: Option<u8>,
    pub n: Vec<usize>,
    pub n_param: Option<f64>,
    pub count: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WindowConfig {
    pub x_star: Option<f64>,
    pub exponent: Option<f64>,
    pub grid: Option<GridSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelConfig {
    pub family: String,
    pub alpha: Option<f64>,
    pub s: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputConfig {
    pub path: Option<String>,
    pub format: Format,
    pub workers: Option<usize>,
}

impl OutputConfig {
    pub fn from_args(o: &OutputArgs) -> Self {
        let inferred = match o
            .out
            .as_ref()
            .and_then(|p| p.extension())
            .and_then(|e| e.to_str())
        {
            Some("json") => Format::Json,
            _ => Format::Csv,
        };
        Self {
            path: o.out.as_ref().map(|p| p.display().to_string()),
            format: o.format.unwrap_or(inferred),
            workers: o.workers,
        }
    }
}

/// Fully resolved configuration of one run, echoed into every output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub command: String,
    pub potential: Option<PotentialConfig>,
    pub ensemble: Option<EnsembleConfig>,
    pub window: Option<WindowConfig>,
    pub kernel: Option<KernelConfig>,
    pub output: OutputConfig,
    /// Subcommand-specific settings.
    pub options: BTreeMap<String, Value>,
}

impl ExperimentConfig {
    pub fn new(command: &str, output: &OutputArgs) -> Self {
        Self {
            command: command.to_string(),
            potential: None,
            ensemble: None,
            window: None,
            kernel: None,
            output: OutputConfig::from_args(output),
            options: BTreeMap::new(),
        }
    }

    pub fn option(&mut self, key: &str, value: impl Serialize) {
        self.options.insert(
            key.to_string(),
            serde_json::to_value(value).unwrap_or(Value::Null),
        );
    }
}
