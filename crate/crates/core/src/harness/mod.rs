//! Monte Carlo experiments that confront simulations with the convergence
//! bounds, producing [`ExperimentRecord`] tables.
//!
//! Replicas are mapped over a rayon pool; each replica owns the random
//! stream numbered by its index and results are collected in index order,
//! so every table is bit-for-bit reproducible from its seed regardless of
//! thread scheduling.

pub mod fit;
pub mod free_checks;
pub mod paths;
pub mod rates;
pub mod record;
pub mod simulation;
pub mod stats;

use std::time::Instant;

use rayon::prelude::*;

use crate::error::Result;
use crate::simulate::{default_step_count, sample_endpoint, Integrator, SimConfig};
use crate::spectral::{eigenangles, AngleSample};
use crate::transport::CostKind;

pub use fit::{feasible_constant, fit_power_law, PowerLawFit};
pub use free_checks::{run_biane_decay, run_free_continuity, run_qk_bound};
pub use paths::{path_grid, run_bm_tail, run_path_sup, PathSupReport, TailOffset};
pub use rates::{
    run_avg_to_limit, run_concentration_tail, run_pool_bias, run_rate_avg_to_avg, RateReport,
    SpectraSet,
};
pub use record::{read_csv, records_to_csv, write_csv, ExperimentRecord, RunManifest, CSV_HEADER};
pub use simulation::{run_coupling_check, run_exact_mean, run_moment_convergence};

/// Options shared by every experiment.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Settings {
    pub seed: u64,
    pub integrator: Integrator,
    /// Integrator steps per simulation; `None` picks
    /// [`default_step_count`] for each final time.
    pub steps: Option<usize>,
    pub cost: CostKind,
    /// Fill the `wall_time_s` column. Off by default so that tables are
    /// byte-identical across runs.
    pub timing: bool,
}

impl Settings {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn sim(&self, n: usize, t: f64, replicas: usize) -> SimConfig {
        SimConfig::new(n, t)
            .with_steps(self.steps.unwrap_or_else(|| default_step_count(t)))
            .with_integrator(self.integrator)
            .with_replicas(replicas)
            .with_seed(self.seed)
    }

    pub(crate) fn clock(&self) -> Clock {
        Clock(self.timing.then(Instant::now))
    }
}

pub(crate) struct Clock(Option<Instant>);

impl Clock {
    pub fn elapsed(&self) -> Option<f64> {
        self.0.map(|s| s.elapsed().as_secs_f64())
    }
}

/// Records of one or more experiments plus what produced them.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub records: Vec<ExperimentRecord>,
    pub sim_configs: Vec<SimConfig>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn extend(&mut self, other: Report) {
        self.records.extend(other.records);
        self.sim_configs.extend(other.sim_configs);
        self.warnings.extend(other.warnings);
    }

    pub fn all_satisfied(&self) -> bool {
        self.records.iter().all(|r| r.bound_satisfied)
    }

    /// Records whose experiment name starts with `prefix`.
    pub fn select<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = &'a ExperimentRecord> {
        self.records
            .iter()
            .filter(move |r| r.experiment.starts_with(prefix))
    }

    pub(crate) fn stamp(&mut self, from: usize, seconds: Option<f64>) {
        for r in &mut self.records[from..] {
            r.wall_time = seconds;
        }
    }
}

/// `f(offset), ..., f(offset + count - 1)` in parallel, in index order.
pub(crate) fn par_replicas<T, F>(count: usize, offset: u64, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> Result<T> + Sync,
{
    (0..count as u64)
        .into_par_iter()
        .map(|i| f(offset + i))
        .collect()
}

/// Eigenangles of `cfg.replicas` endpoints on streams `offset..`.
pub fn sample_spectra(cfg: &SimConfig, offset: u64) -> Result<Vec<AngleSample>> {
    cfg.validate()?;
    par_replicas(cfg.replicas, offset, |id| {
        eigenangles(&sample_endpoint(cfg, id)?)
    })
}
