//! Forward integration of `dU = U dW - (1/2) U dt`, `U_0 = I`, with `W` a
//! standard Brownian motion on `(u(N), <.,.>_N)`.

use faer::{c64, Mat};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::{gaussian_su, gaussian_u};
use crate::rng::{derive_stream, RngStream};
use crate::unitary::{expm_skew, polar_unitary, UnitaryMatrix, DEFAULT_UNITARY_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Integrator {
    /// `U <- U (I + sqrt(dt) X - dt/2 I)`, then polar re-unitarization.
    EulerProjected,
    /// `U <- U exp(sqrt(dt) X)`.
    #[default]
    Geodesic,
}

impl std::str::FromStr for Integrator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "euler" | "euler_projected" => Ok(Self::EulerProjected),
            "geodesic" => Ok(Self::Geodesic),
            other => Err(Error::InvalidConfig(format!(
                "unknown integrator {other:?}"
            ))),
        }
    }
}

/// Steps needed to keep `dt <= 0.01`, with a floor of 100.
pub fn default_step_count(t: f64) -> usize {
    ((100.0 * t).ceil() as usize).max(100)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub n: usize,
    pub t_final: f64,
    pub step_count: usize,
    pub integrator: Integrator,
    pub replicas: usize,
    pub master_seed: u64,
}

impl SimConfig {
    /// Geodesic integrator, default step count, one replica, seed 0.
    pub fn new(n: usize, t_final: f64) -> Self {
        Self {
            n,
            t_final,
            step_count: default_step_count(t_final),
            integrator: Integrator::default(),
            replicas: 1,
            master_seed: 0,
        }
    }

    pub fn with_replicas(mut self, replicas: usize) -> Self {
        self.replicas = replicas;
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.master_seed = seed;
        self
    }

    pub fn with_steps(mut self, steps: usize) -> Self {
        self.step_count = steps;
        self
    }

    pub fn with_integrator(mut self, integrator: Integrator) -> Self {
        self.integrator = integrator;
        self
    }

    pub fn dt(&self) -> f64 {
        self.t_final / self.step_count as f64
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidDimension(0));
        }
        if !(self.t_final >= 0.0) || !self.t_final.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "t_final = {} must be >= 0",
                self.t_final
            )));
        }
        if self.step_count == 0 {
            return Err(Error::InvalidConfig("step_count must be >= 1".into()));
        }
        if self.replicas == 0 {
            return Err(Error::InvalidConfig("replicas must be >= 1".into()));
        }
        Ok(())
    }
}

/// A single Brownian path observed on a time grid.
#[derive(Clone, Debug)]
pub struct PathSample {
    pub grid: Vec<f64>,
    pub states: Vec<UnitaryMatrix>,
}

/// One integrator step of size `dt` from `u`.
pub fn step(
    u: &UnitaryMatrix,
    dt: f64,
    rng: &mut RngStream,
    integrator: Integrator,
) -> Result<UnitaryMatrix> {
    u.check(DEFAULT_UNITARY_TOL)?;
    step_unchecked(u, dt, rng, integrator)
}

fn step_unchecked(
    u: &UnitaryMatrix,
    dt: f64,
    rng: &mut RngStream,
    integrator: Integrator,
) -> Result<UnitaryMatrix> {
    if !(dt >= 0.0) || !dt.is_finite() {
        return Err(Error::InvalidInput(format!("step size {dt} must be >= 0")));
    }
    if dt == 0.0 {
        return Ok(u.clone());
    }
    let n = u.n();
    let x = gaussian_u(n, rng)?;
    let next = match integrator {
        Integrator::Geodesic => u.mul(&expm_skew(&x.scaled(dt.sqrt()))?),
        Integrator::EulerProjected => {
            let sq = dt.sqrt();
            let xm = x.as_mat();
            let inc = Mat::<c64>::from_fn(n, n, |j, k| {
                let diag = if j == k { 1.0 - 0.5 * dt } else { 0.0 };
                xm[(j, k)] * sq + c64::new(diag, 0.0)
            });
            polar_unitary(&(u.as_mat() * &inc))?
        }
    };
    #[cfg(debug_assertions)]
    next.check(DEFAULT_UNITARY_TOL)?;
    Ok(next)
}

/// Advances `u` by total time `span` in `substeps` equal steps.
fn advance(
    mut u: UnitaryMatrix,
    span: f64,
    substeps: usize,
    rng: &mut RngStream,
    integrator: Integrator,
) -> Result<UnitaryMatrix> {
    let h = span / substeps as f64;
    for _ in 0..substeps {
        u = step_unchecked(&u, h, rng, integrator)?;
    }
    Ok(u)
}

/// `U_{t_final}` for replica `stream_id`.
pub fn sample_endpoint(cfg: &SimConfig, stream_id: u64) -> Result<UnitaryMatrix> {
    cfg.validate()?;
    let u = UnitaryMatrix::identity(cfg.n);
    if cfg.t_final == 0.0 {
        return Ok(u);
    }
    let mut rng = derive_stream(cfg.master_seed, stream_id);
    let u = advance(u, cfg.t_final, cfg.step_count, &mut rng, cfg.integrator)?;
    u.check(DEFAULT_UNITARY_TOL)?;
    Ok(u)
}

/// Checks that `grid` starts at 0, increases strictly and ends by `t_final`.
pub fn validate_grid(grid: &[f64], t_final: f64) -> Result<()> {
    match grid.first() {
        None => return Err(Error::InvalidGrid("empty grid".into())),
        Some(&g0) if g0 != 0.0 => {
            return Err(Error::InvalidGrid(format!("grid starts at {g0}, not 0")))
        }
        _ => {}
    }
    if let Some(w) = grid.windows(2).find(|w| !(w[1] > w[0])) {
        return Err(Error::InvalidGrid(format!(
            "grid not strictly increasing at {} -> {}",
            w[0], w[1]
        )));
    }
    let last = *grid.last().unwrap();
    if last > t_final * (1.0 + 1e-12) {
        return Err(Error::InvalidGrid(format!(
            "grid ends at {last}, beyond t_final = {t_final}"
        )));
    }
    Ok(())
}

/// One path observed at every time in `grid`. Between grid points the path
/// is refined so that no sub-step exceeds `t_final / step_count`.
pub fn sample_path(cfg: &SimConfig, grid: &[f64], stream_id: u64) -> Result<PathSample> {
    cfg.validate()?;
    validate_grid(grid, cfg.t_final)?;
    let dt_max = cfg.dt();
    let mut rng = derive_stream(cfg.master_seed, stream_id);
    let mut states = Vec::with_capacity(grid.len());
    let mut u = UnitaryMatrix::identity(cfg.n);
    states.push(u.clone());
    for w in grid.windows(2) {
        let span = w[1] - w[0];
        let substeps = ((span / dt_max) * (1.0 - 1e-9)).ceil().max(1.0) as usize;
        u = advance(u, span, substeps, &mut rng, cfg.integrator)?;
        u.check(DEFAULT_UNITARY_TOL)?;
        states.push(u.clone());
    }
    Ok(PathSample {
        grid: grid.to_vec(),
        states,
    })
}

/// `U_t = z_t V_t` with `z_t = exp(i b_t / N)` for a real Brownian motion
/// `b` and `V` a Brownian motion on SU(N) driven by [`gaussian_su`].
pub fn sample_endpoint_coupled(cfg: &SimConfig, stream_id: u64) -> Result<UnitaryMatrix> {
    let (z, v) = sample_coupled_parts(cfg, stream_id)?;
    Ok(v.scale_phase(z))
}

/// The circle factor `z_t` and the SU(N) factor `V_t` separately.
pub fn sample_coupled_parts(cfg: &SimConfig, stream_id: u64) -> Result<(c64, UnitaryMatrix)> {
    cfg.validate()?;
    let n = cfg.n;
    let mut v = UnitaryMatrix::identity(n);
    if cfg.t_final == 0.0 {
        return Ok((c64::new(1.0, 0.0), v));
    }
    let mut rng = derive_stream(cfg.master_seed, stream_id);
    let h = cfg.dt();
    let sq = h.sqrt();
    let mut b = 0.0;
    for _ in 0..cfg.step_count {
        let x = gaussian_su(n, &mut rng)?;
        b += sq * rng.normal();
        v = v.mul(&expm_skew(&x.scaled(sq))?);
    }
    v.check(DEFAULT_UNITARY_TOL)?;
    let phase = b / n as f64;
    Ok((c64::new(phase.cos(), phase.sin()), v))
}
