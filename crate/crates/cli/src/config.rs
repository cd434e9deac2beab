use std::path::Path;

use serde::{Deserialize, Serialize};
use squeeze_core::{Complex64, Grid, SqueezedDisplacedState};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Everything a run depends on. Serializes to the JSON accepted by `--config`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub s0_re: f64,
    pub s0_im: f64,
    pub d0_re: f64,
    pub d0_im: f64,
    pub t_start: f64,
    pub t_end: f64,
    pub n_steps: usize,
    pub grid_half_width: f64,
    pub grid_points: usize,
    pub n_max: usize,
    pub tolerance: f64,
    pub output_format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            s0_re: 1.0,
            s0_im: 0.0,
            d0_re: 0.0,
            d0_im: 0.0,
            t_start: 0.0,
            t_end: std::f64::consts::TAU,
            n_steps: 64,
            grid_half_width: squeeze_core::grid::DEFAULT_HALF_WIDTH,
            grid_points: squeeze_core::grid::DEFAULT_POINTS,
            n_max: squeeze_core::fock::DEFAULT_N_MAX,
            tolerance: 1e-8,
            output_format: OutputFormat::Csv,
        }
    }
}

impl RunConfig {
    pub fn from_json_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let finite = [
            ("s0_re", self.s0_re),
            ("s0_im", self.s0_im),
            ("d0_re", self.d0_re),
            ("d0_im", self.d0_im),
            ("t_start", self.t_start),
            ("t_end", self.t_end),
            ("grid_half_width", self.grid_half_width),
            ("tolerance", self.tolerance),
        ];
        if let Some((name, _)) = finite.iter().find(|(_, v)| !v.is_finite()) {
            return Err(CliError::Config(format!("{name} must be finite")));
        }
        if self.s0_re <= 0.0 {
            return Err(CliError::Config(format!(
                "s0_re = {} must be positive for a normalizable state",
                self.s0_re
            )));
        }
        if self.n_steps < 1 {
            return Err(CliError::Config("n_steps must be at least 1".into()));
        }
        if self.grid_points < 16 {
            return Err(CliError::Config(format!(
                "grid_points = {} must be at least 16",
                self.grid_points
            )));
        }
        if self.grid_half_width <= 0.0 {
            return Err(CliError::Config("grid_half_width must be positive".into()));
        }
        if self.tolerance <= 0.0 {
            return Err(CliError::Config("tolerance must be positive".into()));
        }
        Ok(())
    }

    pub fn state(&self) -> Result<SqueezedDisplacedState, CliError> {
        SqueezedDisplacedState::new(
            Complex64::new(self.s0_re, self.s0_im),
            Complex64::new(self.d0_re, self.d0_im),
        )
        .map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn grid(&self) -> Result<Grid, CliError> {
        Grid::symmetric(self.grid_half_width, self.grid_points)
            .map_err(|e| CliError::Config(e.to_string()))
    }

    /// `n_steps + 1` evenly spaced times from `t_start` to `t_end`.
    pub fn times(&self) -> Vec<f64> {
        let span = self.t_end - self.t_start;
        (0..=self.n_steps)
            .map(|k| {
                if k == self.n_steps {
                    self.t_end
                } else {
                    self.t_start + span * k as f64 / self.n_steps as f64
                }
            })
            .collect()
    }
}
