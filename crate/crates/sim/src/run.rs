//! The `simulate` command.

use std::fmt;
use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use dynprod_core::{accelerations, integrate, Trajectory};

use crate::config::{load_config, Config, ConfigError};
use crate::output::write_csv;

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    /// The equations cannot be solved at the initial state.
    #[error("{0}")]
    Initial(dynprod_core::Error),
    #[error("{0}")]
    Integration(dynprod_core::Error),
    #[error("cannot write {path}: {message}")]
    Output { path: String, message: String },
}

impl RunError {
    /// 2 for configuration and singularity errors, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        match self {
            RunError::Config(_) | RunError::Initial(_) | RunError::Integration(_) => 2,
            RunError::Output { .. } => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub mode: &'static str,
    pub samples: usize,
    pub t_final: f64,
    pub energy_drift: f64,
    pub theta1_drift: f64,
    pub v_drift: f64,
    pub w_drift: f64,
    pub max_herm_defect: f64,
    pub min_g_eig: f64,
    pub max_g_condition: f64,
}

impl Summary {
    pub fn of(traj: &Trajectory) -> Self {
        let d = traj.samples.iter().map(|s| s.diagnostics);
        Self {
            mode: traj.mode.name(),
            samples: traj.samples.len(),
            t_final: traj.last().state.t,
            energy_drift: traj.energy_drift(),
            theta1_drift: traj.theta1_drift(),
            v_drift: traj.v_drift(),
            w_drift: traj.w_drift(),
            max_herm_defect: d.clone().map(|x| x.herm_defect).fold(0.0, f64::max),
            min_g_eig: d.clone().map(|x| x.g_min_eig).fold(f64::INFINITY, f64::min),
            max_g_condition: d.map(|x| x.g_condition).fold(0.0, f64::max),
        }
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "mode            {}", self.mode)?;
        writeln!(f, "samples         {}", self.samples)?;
        writeln!(f, "t_final         {}", self.t_final)?;
        writeln!(f, "energy drift    {:.3e}", self.energy_drift)?;
        writeln!(f, "theta1 drift    {:.3e}", self.theta1_drift)?;
        writeln!(f, "V drift         {:.3e}", self.v_drift)?;
        writeln!(f, "W drift         {:.3e}", self.w_drift)?;
        writeln!(f, "max herm defect {:.3e}", self.max_herm_defect)?;
        writeln!(f, "min eig G       {:.6e}", self.min_g_eig)?;
        write!(f, "max cond G      {:.6e}", self.max_g_condition)
    }
}

/// Integrates `cfg` and writes the trajectory CSV to `output`.
pub fn run_simulate(cfg: &Config, output: &Path) -> Result<Summary, RunError> {
    accelerations(&cfg.state, &cfg.params, cfg.mode).map_err(RunError::Initial)?;
    let traj = integrate(&cfg.state, &cfg.params, cfg.mode, &cfg.integrator).map_err(RunError::Integration)?;
    let io_err = |e: &dyn fmt::Display| RunError::Output { path: output.display().to_string(), message: e.to_string() };
    let file = File::create(output).map_err(|e| io_err(&e))?;
    write_csv(BufWriter::new(file), &traj).map_err(|e| io_err(&e))?;
    Ok(Summary::of(&traj))
}

pub fn simulate(config: &Path, output: &Path, seed: Option<u64>) -> Result<Summary, RunError> {
    let cfg = load_config(config, seed)?;
    run_simulate(&cfg, output)
}
