//! Density, distribution function and quantiles of `nu_t` reconstructed
//! from its Fourier (moment) sequence.
//!
//! `nu_t` is symmetric, so its Fourier coefficients are the real moments
//! `m_k` and the density is `(1 + 2 sum_k w_k m_k cos(k theta)) / (2 pi)`.
//! Fejer weights `w_k = 1 - k/(K+1)` make the truncation a convolution
//! with a positive kernel, hence nonnegative.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::moments::moment_sequence;
use crate::error::{Error, Result};
use crate::transport::QuantileSource;

/// Smallest time accepted by the reconstruction pipeline.
pub const MIN_MODEL_TIME: f64 = 0.5;

/// Minimum number of cells in the cached grid.
pub const MIN_GRID: usize = 4096;

/// Density level above which a point counts as inside the support.
pub const SUPPORT_THRESHOLD: f64 = 1e-4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Smoothing {
    None,
    Fejer,
}

/// Default truncation order: 256 for `t >= 1`, 1024 below.
pub fn default_k_max(t: f64) -> usize {
    if t >= 1.0 {
        256
    } else {
        1024
    }
}

/// Fejer below t = 4 (arc support, Gibbs ringing), raw series above.
pub fn default_smoothing(t: f64) -> Smoothing {
    if t < 4.0 {
        Smoothing::Fejer
    } else {
        Smoothing::None
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuantileEstimate {
    pub angle: f64,
    /// Estimated inversion error in radians.
    pub error: f64,
}

#[derive(Clone, Debug)]
pub struct FreeMeasureModel {
    t: f64,
    k_max: usize,
    smoothing: Smoothing,
    moments: Vec<f64>,
    /// `w_k m_k`, index k - 1.
    coefficients: Vec<f64>,
    grid: Vec<f64>,
    density_grid: Vec<f64>,
    cdf_grid: Vec<f64>,
}

impl FreeMeasureModel {
    pub fn new(t: f64) -> Result<Self> {
        Self::with_options(t, default_k_max(t), default_smoothing(t))
    }

    pub fn with_options(t: f64, k_max: usize, smoothing: Smoothing) -> Result<Self> {
        if !(t >= MIN_MODEL_TIME) || !t.is_finite() {
            return Err(Error::Domain {
                value: t,
                domain: "t >= 0.5",
            });
        }
        if k_max == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let moments = moment_sequence(t, k_max);
        let coefficients = moments
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let k = (i + 1) as f64;
                let w = match smoothing {
                    Smoothing::None => 1.0,
                    Smoothing::Fejer => 1.0 - k / (k_max as f64 + 1.0),
                };
                w * m
            })
            .collect();
        let mut model = Self {
            t,
            k_max,
            smoothing,
            moments,
            coefficients,
            grid: Vec::new(),
            density_grid: Vec::new(),
            cdf_grid: Vec::new(),
        };
        let cells = MIN_GRID.max(4 * k_max);
        model.grid = (0..=cells)
            .map(|i| -PI + 2.0 * PI * i as f64 / cells as f64)
            .collect();
        model.density_grid = model.grid.iter().map(|&th| model.density(th)).collect();
        let mut running = 0.0f64;
        model.cdf_grid = model
            .grid
            .iter()
            .map(|&th| {
                // Cumulative max keeps the cached table monotone.
                running = running.max(model.cdf(th));
                running
            })
            .collect();
        Ok(model)
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn k_max(&self) -> usize {
        self.k_max
    }

    pub fn smoothing(&self) -> Smoothing {
        self.smoothing
    }

    /// Raw moments `m_1..m_kmax`.
    pub fn moments(&self) -> &[f64] {
        &self.moments
    }

    /// Smoothed coefficients `w_k m_k`.
    pub fn weighted_moments(&self) -> &[f64] {
        &self.coefficients
    }

    /// Cached `(angle, density)` grid over [-pi, pi].
    pub fn density_grid(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.grid
            .iter()
            .copied()
            .zip(self.density_grid.iter().copied())
    }

    /// Sum `sum_k a_k cos(k theta)` by Clenshaw's recurrence.
    fn cosine_series(&self, theta: f64) -> f64 {
        let c = theta.cos();
        let (mut b1, mut b2) = (0.0f64, 0.0f64);
        for &a in self.coefficients.iter().rev() {
            let b0 = a + 2.0 * c * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        // sum_{k>=1} a_k cos k theta = b1 cos theta - b2
        b1 * c - b2
    }

    /// `sum_k a_k sin(k theta) / k`.
    fn sine_series(&self, theta: f64) -> f64 {
        let c = theta.cos();
        let s = theta.sin();
        let (mut b1, mut b2) = (0.0f64, 0.0f64);
        for (i, &a) in self.coefficients.iter().enumerate().rev() {
            let b0 = a / (i + 1) as f64 + 2.0 * c * b1 - b2;
            b2 = b1;
            b1 = b0;
        }
        // sum_{k>=1} a_k sin k theta = b1 sin theta
        b1 * s
    }

    pub fn density(&self, theta: f64) -> f64 {
        (1.0 + 2.0 * self.cosine_series(theta)) / (2.0 * PI)
    }

    /// `nu_t((-pi, theta])` for theta in [-pi, pi], from the exact
    /// antiderivative of the truncated series.
    pub fn cdf(&self, theta: f64) -> f64 {
        let th = theta.clamp(-PI, PI);
        (th + PI) / (2.0 * PI) + self.sine_series(th) / PI
    }

    /// Angle at which the distribution function reaches `p`.
    pub fn cdf_quantile(&self, p: f64) -> Result<QuantileEstimate> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain {
                value: p,
                domain: "(0, 1)",
            });
        }
        Ok(self.invert(p))
    }

    fn invert(&self, p: f64) -> QuantileEstimate {
        // Bracket on the cached monotone table.
        let i = self.cdf_grid.partition_point(|&f| f < p);
        let hi_idx = i.clamp(1, self.grid.len() - 1);
        let (mut lo, mut hi) = (self.grid[hi_idx - 1], self.grid[hi_idx]);
        let cell = hi - lo;
        let mut x = 0.5 * (lo + hi);
        for _ in 0..100 {
            let f = self.cdf(x) - p;
            if f == 0.0 {
                break;
            }
            if f > 0.0 {
                hi = x;
            } else {
                lo = x;
            }
            let d = self.density(x);
            if hi - lo < 1e-14 || (f.abs() < 1e-15 && d > 1e-8) {
                break;
            }
            let newton = x - f / d;
            x = if d > 1e-8 && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
        }
        let dens = self.density(x).max(0.0);
        let residual = (self.cdf(x) - p).abs();
        let error = if dens > 1e-12 {
            (residual / dens).min(cell)
        } else {
            (hi - lo).max(1e-14)
        };
        QuantileEstimate { angle: x, error }
    }

    /// Density level used by [`Self::support_half_width`]:
    /// [`SUPPORT_THRESHOLD`] or `1 / k_max`, whichever is larger. A
    /// truncated series leaks mass of order `0.1 / k_max` outside the true
    /// support, so a fixed threshold below that floor would report the
    /// whole circle.
    pub fn support_threshold(&self) -> f64 {
        SUPPORT_THRESHOLD.max(1.0 / self.k_max as f64)
    }

    /// Numerical support: the symmetric arc `[-a, a]` where the density
    /// exceeds [`Self::support_threshold`], or `None` if that is the whole
    /// circle.
    pub fn support_half_width(&self) -> Option<f64> {
        self.support_half_width_at(self.support_threshold())
    }

    /// Support arc for an explicit density threshold.
    pub fn support_half_width_at(&self, threshold: f64) -> Option<f64> {
        let mut edge = None;
        for (&th, &d) in self.grid.iter().zip(&self.density_grid) {
            if th >= 0.0 && d > threshold {
                edge = Some(th);
            }
        }
        match edge {
            Some(a) if a < PI - 1e-9 => Some(a),
            _ => None,
        }
    }
}

impl QuantileSource for FreeMeasureModel {
    fn quantile(&self, p: f64) -> f64 {
        if p <= 0.0 {
            -PI
        } else if p >= 1.0 {
            PI
        } else {
            self.invert(p).angle
        }
    }
}
