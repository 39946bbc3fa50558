//! Numerical model of the free unitary Brownian motion distribution `nu_t`.

pub mod model;
pub mod moments;
pub mod qpoly;

pub use model::{FreeMeasureModel, QuantileEstimate, Smoothing};
pub use moments::{moment, moment_laguerre, moment_sequence};
pub use qpoly::{factorial_envelope, q_polynomial, QPolynomial};

use crate::error::{Error, Result};
use crate::transport::{w1_between_continuous, TransportResult, UniformCircle};

/// Minimum atom count for [`w1_to_uniform`].
pub const MIN_UNIFORM_ATOMS: usize = 1024;

/// Geodesic W1 between `nu_t` and the uniform measure through `m`-atom
/// quantile discretizations of both.
pub fn w1_to_uniform(t: f64, m: usize) -> Result<TransportResult> {
    if !(t >= 1.0) {
        return Err(Error::Domain {
            value: t,
            domain: "t >= 1",
        });
    }
    if m < MIN_UNIFORM_ATOMS {
        return Err(Error::InvalidInput(format!(
            "at least {MIN_UNIFORM_ATOMS} atoms required, got {m}"
        )));
    }
    let model = FreeMeasureModel::new(t)?;
    w1_between_continuous(&model, &UniformCircle, m)
}

/// Geodesic W1 between `nu_s` and `nu_t`.
pub fn w1_between_times(s: f64, t: f64, m: usize) -> Result<TransportResult> {
    let a = FreeMeasureModel::new(s)?;
    let b = FreeMeasureModel::new(t)?;
    w1_between_continuous(&a, &b, m)
}
